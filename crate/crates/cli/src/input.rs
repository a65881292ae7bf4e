use std::path::Path;

use kborel_core::groups::{FiniteGroup, GroupSpec};
use kborel_core::{Error, Result, SCHEMA};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

/// Reads a JSON document and strips its optional `"schema"` tag, which
/// must match when present.
pub fn read_document(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)?;
    strip_schema(value)
}

pub fn strip_schema(mut value: Value) -> Result<Value> {
    if let Value::Object(map) = &mut value {
        if let Some(tag) = map.remove("schema") {
            match tag {
                Value::String(s) if s == SCHEMA => {}
                Value::String(s) => return Err(Error::Schema { expected: SCHEMA.into(), found: s }),
                other => return Err(Error::Schema { expected: SCHEMA.into(), found: other.to_string() }),
            }
        }
    }
    Ok(value)
}

pub fn decode<T: DeserializeOwned>(value: Value) -> Result<T> {
    Ok(serde_json::from_value(value)?)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GroupInput {
    Spec(GroupSpec),
    Cyclic {
        cyclic: usize,
    },
    Symmetric {
        symmetric: usize,
    },
}

/// A group document: `{"group": ...}` or the group itself, given as a
/// Cayley table, permutation generators, `{"cyclic": m}` or
/// `{"symmetric": n}`.
pub fn read_group(value: Value, cap: usize) -> Result<(Option<String>, FiniteGroup)> {
    let (name, body) = match value {
        Value::Object(mut map) if map.contains_key("group") => {
            let name = match map.remove("name") {
                Some(Value::String(s)) => Some(s),
                None => None,
                Some(other) => return Err(Error::InvalidArgument(format!("group name must be a string, got {other}"))),
            };
            let body = map.remove("group").expect("checked");
            if let Some(key) = map.keys().next() {
                return Err(Error::InvalidArgument(format!("unknown field {key:?} in group document")));
            }
            (name, body)
        }
        other => (None, other),
    };
    let group = match decode::<GroupInput>(body)? {
        GroupInput::Spec(spec) => FiniteGroup::from_spec(&spec, cap)?,
        GroupInput::Cyclic { cyclic } => {
            if cyclic == 0 {
                return Err(Error::InvalidGroup("a cyclic group has positive order".into()));
            }
            if cyclic > cap {
                return Err(Error::OrderCap { order: cyclic, cap });
            }
            FiniteGroup::cyclic(cyclic)
        }
        GroupInput::Symmetric { symmetric } => {
            let order = (1..=symmetric).try_fold(1usize, |acc, i| acc.checked_mul(i).filter(|&o| o <= cap));
            if order.is_none() {
                return Err(Error::OrderCap { order: usize::MAX, cap });
            }
            FiniteGroup::symmetric(symmetric)?
        }
    };
    Ok((name, group))
}

/// The group-order cap from the flag, then the environment, then the
/// library default.
pub fn order_cap(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("KBOREL_ORDER_CAP must be a non-negative integer, got {s:?}"))),
        None => Ok(kborel_core::groups::DEFAULT_ORDER_CAP),
    }
}
