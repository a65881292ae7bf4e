use serde::{Deserialize, Serialize};

use super::homs::{check_hom, compose, image, is_zero_map, kernel, kills, normalize};
use super::tower::{p_primary, padic_induced, padic_level, TailRule, Tower};
use crate::abelian::FgAbGroup;
use crate::linalg::{IntMatrix, Lattice};
use crate::{Error, Result};

/// How a tower map continues past the common prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum MapTail {
    /// `f_n = matrix` for every `n > L`; for constant or eventually-zero
    /// tails on both sides.
    Periodic { matrix: IntMatrix },
    /// `f_n` induced by `phi: A -> B` between two p-adic tails at one prime.
    Induced { phi: IntMatrix },
    /// Both towers share their tail and `f_n` is the identity for `n >= L`.
    Identity,
}

/// A strict map of towers `{f_n: M_n -> M'_n}` given on a common prefix
/// length `L` plus a tail rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TowerMapRepr", into = "TowerMapRepr")]
pub struct TowerMap {
    source: Tower,
    target: Tower,
    prefix: Vec<IntMatrix>,
    tail: MapTail,
}

#[derive(Serialize, Deserialize)]
struct TowerMapRepr {
    source: Tower,
    target: Tower,
    prefix: Vec<IntMatrix>,
    tail: MapTail,
}

impl TryFrom<TowerMapRepr> for TowerMap {
    type Error = Error;
    fn try_from(r: TowerMapRepr) -> Result<Self> {
        TowerMap::new(r.source, r.target, r.prefix, r.tail)
    }
}

impl From<TowerMap> for TowerMapRepr {
    fn from(m: TowerMap) -> Self {
        TowerMapRepr { source: m.source, target: m.target, prefix: m.prefix, tail: m.tail }
    }
}

impl TowerMap {
    pub fn new(source: Tower, target: Tower, prefix: Vec<IntMatrix>, tail: MapTail) -> Result<Self> {
        let l = prefix.len();
        if source.prefix_len() != l || target.prefix_len() != l {
            return Err(Error::InvalidTower(format!(
                "map prefix has {l} levels but the towers have {} and {}",
                source.prefix_len(),
                target.prefix_len()
            )));
        }
        let map = TowerMap { source, target, prefix, tail };
        map.validate()?;
        Ok(map)
    }

    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    pub fn tail(&self) -> &MapTail {
        &self.tail
    }

    /// `f_n` for `n >= 1`.
    pub fn component(&self, n: usize) -> Result<IntMatrix> {
        if n == 0 {
            return Err(Error::InvalidArgument("tower levels start at 1".into()));
        }
        if let Some(m) = self.prefix.get(n - 1) {
            return Ok(m.clone());
        }
        match (&self.tail, self.source.tail(), self.target.tail()) {
            (MapTail::Periodic { matrix }, _, _) => Ok(matrix.clone()),
            (MapTail::Identity, _, _) => Ok(IntMatrix::identity(self.source.level(n)?.num_generators())),
            (
                MapTail::Induced { phi },
                TailRule::PAdicQuotient { group: a, p, .. },
                TailRule::PAdicQuotient { group: b, .. },
            ) => Ok(padic_induced(a, b, *p, n, phi)),
            _ => Err(Error::InvalidTower("induced map tail needs p-adic tails".into())),
        }
    }

    fn validate(&self) -> Result<()> {
        let l = self.prefix.len();
        match (&self.tail, self.source.tail(), self.target.tail()) {
            (MapTail::Periodic { .. }, s, t)
                if matches!(s, TailRule::Constant | TailRule::EventuallyZero)
                    && matches!(t, TailRule::Constant | TailRule::EventuallyZero) => {}
            (MapTail::Periodic { .. }, _, _) => {
                return Err(Error::InvalidTower("a periodic map tail needs constant or eventually-zero tails".into()))
            }
            (
                MapTail::Induced { phi },
                TailRule::PAdicQuotient { group: a, p, .. },
                TailRule::PAdicQuotient { group: b, p: q, .. },
            ) if p == q => check_hom(a, b, phi)?,
            (MapTail::Induced { .. }, _, _) => {
                return Err(Error::InvalidTower("an induced map tail needs p-adic tails at one prime".into()))
            }
            (MapTail::Identity, s, t) => {
                if s != t {
                    return Err(Error::InvalidTower("an identity map tail needs identical tails".into()));
                }
                if l > 0 {
                    let (ms, mt) = (self.source.level(l)?, self.target.level(l)?);
                    if ms != mt || normalize(&mt, &self.prefix[l - 1]) != normalize(&mt, &IntMatrix::identity(mt.num_generators())) {
                        return Err(Error::InvalidTower("an identity map tail needs f_L to be the identity".into()));
                    }
                }
            }
        }
        // Levels up to L + 2 cover the first tail square and one square
        // inside the tail; further squares repeat these by the tail rules.
        let top = match self.source.materialized_depth() {
            Some(d) => d,
            None => l + 2,
        };
        for n in 1..=top {
            let (ms, mt) = (self.source.level(n)?, self.target.level(n)?);
            let f = self.component(n)?;
            check_hom(&ms, &mt, &f)?;
            if n >= 2 {
                let f_prev = self.component(n - 1)?;
                let mt_prev = self.target.level(n - 1)?;
                let left = compose(&mt_prev, &self.target.map(n)?, &f);
                let right = compose(&mt_prev, &f_prev, &self.source.map(n)?);
                let diff = left.add(&negate(&right)).expect("same shape");
                if !is_zero_map(&mt_prev, &diff) {
                    return Err(Error::InvalidTower(format!("the square at level {n} does not commute")));
                }
            }
        }
        Ok(())
    }

    /// Whether the map is an isomorphism in the pro-category.
    pub fn is_pro_isomorphism(&self) -> Result<bool> {
        match (&self.tail, self.source.tail(), self.target.tail()) {
            (MapTail::Identity, _, _) => Ok(true),
            (
                MapTail::Induced { phi },
                TailRule::PAdicQuotient { group: a, p, .. },
                TailRule::PAdicQuotient { group: b, .. },
            ) => {
                // Cofinality lets us drop the prefix. The induced map is a
                // pro-isomorphism iff the map of completions is an
                // isomorphism, i.e. it is onto mod p and the completions agree.
                let level_map = padic_induced(a, b, *p, 1, phi);
                let onto = padic_level(b, *p, 1).num_generators() == level_map.rank_mod(p.get());
                Ok(onto && a.free_rank() == b.free_rank() && p_primary(a, *p) == p_primary(b, *p))
            }
            (MapTail::Periodic { .. }, _, _) => self.periodic_window(),
            _ => Err(Error::Unsupported("pro-isomorphism test for this tail combination".into())),
        }
    }

    /// For every `m` some `n >= m` must satisfy `im(beta^m_n) ⊆ im(f_m)` and
    /// `ker(f_n) ⊆ ker(alpha^m_n)`. Past the prefix the data is periodic, so
    /// `m <= L + 1` and `n <= max(m, L) + 1` suffice.
    fn periodic_window(&self) -> Result<bool> {
        let l = self.prefix.len();
        for m in 1..=l + 1 {
            let found = (m..=m.max(l) + 1)
                .map(|n| self.condition(m, n))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .any(|b| b);
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn condition(&self, m: usize, n: usize) -> Result<bool> {
        let (ms_m, mt_m) = (self.source.level(m)?, self.target.level(m)?);
        let (ms_n, mt_n) = (self.source.level(n)?, self.target.level(n)?);
        let alpha = structure_composite(&self.source, m, n)?;
        let beta = structure_composite(&self.target, m, n)?;
        let f_m = self.component(m)?;
        let f_n = self.component(n)?;
        let im_beta = image(&mt_m, &beta);
        let im_f = image(&mt_m, &f_m);
        if !im_f.contains_lattice(&im_beta) {
            return Ok(false);
        }
        let ker_f: Lattice = kernel(&ms_n, &mt_n, &f_n);
        Ok(kills(&ms_m, &alpha, &ker_f))
    }
}

/// `alpha^m_n: M_n -> M_m`, the composite of structure maps.
pub(crate) fn structure_composite(t: &Tower, m: usize, n: usize) -> Result<IntMatrix> {
    let target = t.level(m)?;
    let mut acc = IntMatrix::identity(t.level(n)?.num_generators());
    for k in (m + 1..=n).rev() {
        acc = compose(&t.level(k - 1)?, &t.map(k)?, &acc);
    }
    Ok(normalize(&target, &acc))
}

fn negate(m: &IntMatrix) -> IntMatrix {
    let rows: Vec<Vec<_>> = m.to_rows().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    IntMatrix::from_rows(m.rows(), m.cols(), &rows).expect("shape preserved")
}

/// Groups of a tower at levels `1..=depth`, for diagnostics.
pub fn tower_levels(t: &Tower, depth: usize) -> Result<Vec<FgAbGroup>> {
    (1..=depth).map(|n| t.level(n)).collect()
}
