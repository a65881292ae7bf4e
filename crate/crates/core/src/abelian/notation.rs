use super::{AdicGroup, DivisibleGroup, FgAbGroup, GroupValue, Prime};

/// Symbol set used when printing groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Unicode,
    /// `Z_p^`, `Z/p^inf`, `Q_p^`.
    Ascii,
}

impl Notation {
    fn integers(self) -> &'static str {
        match self {
            Notation::Unicode => "ℤ",
            Notation::Ascii => "Z",
        }
    }

    fn plus(self) -> &'static str {
        match self {
            Notation::Unicode => " ⊕ ",
            Notation::Ascii => " + ",
        }
    }

    fn p_adic(self, p: Prime, rationalized: bool) -> String {
        match (self, rationalized) {
            (Notation::Unicode, false) => format!("ℤ̂_{p}"),
            (Notation::Unicode, true) => format!("ℚ̂_{p}"),
            (Notation::Ascii, false) => format!("Z_{p}^"),
            (Notation::Ascii, true) => format!("Q_{p}^"),
        }
    }

    fn prufer(self, p: Prime) -> String {
        match self {
            Notation::Unicode => format!("ℤ/{p}^∞"),
            Notation::Ascii => format!("Z/{p}^inf"),
        }
    }
}

fn power(base: String, exp: usize, wrap: bool) -> String {
    match (exp, wrap) {
        (1, _) => base,
        (_, true) => format!("({base})^{exp}"),
        (_, false) => format!("{base}^{exp}"),
    }
}

fn join(parts: Vec<String>, n: Notation) -> String {
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(n.plus())
    }
}

fn ambiguity_note(amb: &std::collections::BTreeSet<Prime>) -> String {
    if amb.is_empty() {
        String::new()
    } else {
        let ps: Vec<String> = amb.iter().map(ToString::to_string).collect();
        format!(" (up to finite torsion at {{{}}})", ps.join(","))
    }
}

pub trait Render {
    fn render(&self, n: Notation) -> String;
}

impl Render for FgAbGroup {
    fn render(&self, n: Notation) -> String {
        let mut parts = Vec::new();
        if self.free_rank() > 0 {
            parts.push(power(n.integers().to_string(), self.free_rank(), false));
        }
        parts.extend(self.torsion().iter().map(|d| format!("{}/{d}", n.integers())));
        join(parts, n)
    }
}

impl Render for AdicGroup {
    fn render(&self, n: Notation) -> String {
        let mut parts = Vec::new();
        if self.z_rank() > 0 {
            parts.push(power(n.integers().to_string(), self.z_rank(), false));
        }
        for (&p, &r) in self.p_ranks() {
            parts.push(power(n.p_adic(p, self.is_rationalized()), r, true));
        }
        join(parts, n) + &ambiguity_note(self.ambiguity())
    }
}

impl Render for DivisibleGroup {
    fn render(&self, n: Notation) -> String {
        let mut parts = Vec::new();
        if self.z_rank() > 0 {
            parts.push(power(n.integers().to_string(), self.z_rank(), false));
        }
        for (&p, &r) in self.prufer_ranks() {
            parts.push(power(n.prufer(p), r, true));
        }
        join(parts, n) + &ambiguity_note(self.ambiguity())
    }
}

impl Render for GroupValue {
    fn render(&self, n: Notation) -> String {
        match self {
            GroupValue::Fg(g) => g.render(n),
            GroupValue::Adic(g) => g.render(n),
            GroupValue::Divisible(g) => g.render(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;

    #[test]
    fn both_notations() {
        let two = Prime::new(2).unwrap();
        let three = Prime::new(3).unwrap();
        let a = AdicGroup::new(1, BTreeMap::from([(two, 4), (three, 1)]), BTreeSet::from([two]));
        assert_eq!(a.render(Notation::Unicode), "ℤ ⊕ (ℤ̂_2)^4 ⊕ ℤ̂_3 (up to finite torsion at {2})");
        assert_eq!(a.render(Notation::Ascii), "Z + (Z_2^)^4 + Z_3^ (up to finite torsion at {2})");
        let d = a.pontryagin_dual().unwrap();
        assert_eq!(d.render(Notation::Ascii), "Z + (Z/2^inf)^4 + Z/3^inf (up to finite torsion at {2})");
        let q = a.invert_primes(&BTreeSet::from([two, three]));
        assert_eq!(q.render(Notation::Ascii), "Z + (Q_2^)^4 + Q_3^");
        assert_eq!(FgAbGroup::new(2, &[2]).render(Notation::Unicode), "ℤ^2 ⊕ ℤ/2");
        assert_eq!(FgAbGroup::zero().render(Notation::Ascii), "0");
    }
}
