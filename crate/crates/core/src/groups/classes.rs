use serde::Serialize;

use super::FiniteGroup;
use crate::abelian::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Least element index in the class.
    pub representative: usize,
    /// Sorted.
    pub elements: Vec<usize>,
}

/// A conjugacy class of non-trivial elements of `p`-power order, with the
/// centralizer of the cyclic subgroup its representative generates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConPClass {
    pub representative: usize,
    pub prime: Prime,
    /// `p^a`, `a >= 1`.
    pub order_of_rep: usize,
    /// Sorted elements of `C_G<g>`; centralizing `g` is the same as
    /// centralizing `<g>`.
    pub centralizer: Vec<usize>,
    pub class_size: usize,
}

impl FiniteGroup {
    /// Conjugacy classes in order of their least element.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in self.elements() {
            if assigned[x] {
                continue;
            }
            let mut elements: Vec<usize> = self.elements().map(|g| self.conjugate(g, x)).collect();
            elements.sort_unstable();
            elements.dedup();
            for &y in &elements {
                assigned[y] = true;
            }
            classes.push(ConjugacyClass { representative: x, elements });
        }
        classes
    }

    pub fn con_p(&self, p: Prime) -> Vec<ConPClass> {
        self.conjugacy_classes()
            .into_iter()
            .filter_map(|class| {
                let x = class.representative;
                let order = self.element_order(x);
                if order == 1 || !is_power_of(order, p) {
                    return None;
                }
                Some(ConPClass {
                    representative: x,
                    prime: p,
                    order_of_rep: order,
                    centralizer: self.centralizer(x),
                    class_size: class.elements.len(),
                })
            })
            .collect()
    }
}

pub(crate) fn is_power_of(n: usize, p: Prime) -> bool {
    let p = p.get() as usize;
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let classes = FiniteGroup::cyclic(4).conjugacy_classes();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|c| c.elements.len() == 1));
        assert_eq!(FiniteGroup::trivial().conjugacy_classes().len(), 1);
    }

    #[test]
    fn s3_classes() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.elements.len()).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let two = s3.con_p(p(2));
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].class_size, 3);
        assert_eq!(two[0].centralizer.len(), 2);
        assert_eq!(s3.con_p(p(3)).len(), 1);
        assert!(s3.con_p(p(5)).is_empty());
    }

    #[test]
    fn cyclic_prime_order() {
        for q in [2u64, 3, 5, 7] {
            let g = FiniteGroup::cyclic(q as usize);
            let classes = g.con_p(p(q));
            assert_eq!(classes.len(), q as usize - 1);
            assert!(classes.iter().all(|c| c.centralizer.len() == q as usize && c.order_of_rep == q as usize));
        }
    }

    #[test]
    fn cyclic_composite_order() {
        // Z/12: 2-power elements of order 2, 4: 3 of them; 3-power: 2.
        let g = FiniteGroup::cyclic(12);
        assert_eq!(g.con_p(p(2)).len(), 3);
        assert_eq!(g.con_p(p(3)).len(), 2);
    }
}
