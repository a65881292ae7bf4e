use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::cw::{ComplexRepr, CwComplex};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// Image cell and sign (`+1` or `-1`) for every cell of one dimension.
pub type SignedPermutation = Vec<(usize, i64)>;

/// A finite CW complex with a cellular action of a finite group.
///
/// `action[g][n]` is the signed permutation by which element `g` acts on the
/// `n`-cells. Construction checks that the action is a homomorphism,
/// commutes with the boundary maps, and is admissible: an element sending a
/// cell to plus or minus itself fixes it with sign `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCwComplex {
    base: CwComplex,
    group: FiniteGroup,
    action: Vec<Vec<SignedPermutation>>,
}

/// JSON form of a complex with an action. `action` maps element indices to
/// dimension-indexed signed permutations; elements not listed are obtained
/// as products of listed ones. An empty or missing `action` is the trivial
/// action.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GCwRepr {
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub boundaries: Vec<Vec<(usize, usize, crate::linalg::IntValue)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    pub group: GroupSpec,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, Vec<(usize, i64)>>>,
}

fn parse_index(key: &str, what: &str) -> Result<usize> {
    key.trim()
        .parse()
        .map_err(|_| Error::InvalidAction(format!("{what} key {key:?} is not a non-negative integer")))
}

fn identity_perm(rank: usize) -> SignedPermutation {
    (0..rank).map(|c| (c, 1)).collect()
}

/// `(a . b)(c) = a(b(c))`.
fn compose(a: &[SignedPermutation], b: &[SignedPermutation]) -> Vec<SignedPermutation> {
    a.iter()
        .zip(b)
        .map(|(pa, pb)| {
            pb.iter()
                .map(|&(img, s)| {
                    let (img2, s2) = pa[img];
                    (img2, s * s2)
                })
                .collect()
        })
        .collect()
}

impl GCwComplex {
    /// Builds the action from the listed elements by closing under products.
    pub fn new(base: CwComplex, group: FiniteGroup, given: BTreeMap<usize, Vec<SignedPermutation>>) -> Result<Self> {
        let ranks = base.ranks().to_vec();
        for (&g, perms) in &given {
            if g >= group.order() {
                return Err(Error::InvalidAction(format!("element {g} is out of range for a group of order {}", group.order())));
            }
            check_shape(&ranks, perms, g)?;
        }
        let ident: Vec<SignedPermutation> = ranks.iter().map(|&r| identity_perm(r)).collect();
        let mut known: Vec<Option<Vec<SignedPermutation>>> = vec![None; group.order()];
        known[group.identity()] = Some(ident);
        let mut queue = VecDeque::from([group.identity()]);
        for (&g, perms) in &given {
            match &known[g] {
                Some(existing) if existing != perms => {
                    return Err(Error::InvalidAction("the identity must act trivially".into()));
                }
                Some(_) => {}
                None => {
                    known[g] = Some(perms.clone());
                    queue.push_back(g);
                }
            }
        }
        while let Some(a) = queue.pop_front() {
            for (&s, ps) in &given {
                let prod = group.mul(s, a);
                let value = compose(ps, known[a].as_ref().expect("queued elements are known"));
                match &known[prod] {
                    Some(existing) if *existing != value => {
                        return Err(Error::InvalidAction(format!(
                            "element {prod} would act in two different ways: not a homomorphism"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        known[prod] = Some(value);
                        queue.push_back(prod);
                    }
                }
            }
        }
        let action = known
            .into_iter()
            .enumerate()
            .map(|(g, a)| a.ok_or_else(|| Error::InvalidAction(format!("element {g} is not a product of the listed elements"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_full_action(base, group, action)
    }

    /// Takes the action of every element and validates it.
    pub fn from_full_action(base: CwComplex, group: FiniteGroup, action: Vec<Vec<SignedPermutation>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} actions for a group of order {}", action.len(), group.order())));
        }
        for (g, perms) in action.iter().enumerate() {
            check_shape(base.ranks(), perms, g)?;
        }
        let x = GCwComplex { base, group, action };
        x.validate()?;
        Ok(x)
    }

    /// Every element acts as the identity.
    pub fn trivial(base: CwComplex, group: FiniteGroup) -> Self {
        let ident: Vec<SignedPermutation> = base.ranks().iter().map(|&r| identity_perm(r)).collect();
        let action = vec![ident; group.order()];
        GCwComplex { base, group, action }
    }

    pub fn from_repr(r: &GCwRepr, order_cap: usize) -> Result<Self> {
        let base = CwComplex::from_repr(&ComplexRepr {
            ranks: r.ranks.clone(),
            boundaries: r.boundaries.clone(),
            labels: r.labels.clone(),
        })?;
        let group = FiniteGroup::from_spec(&r.group, order_cap)?;
        if r.action.is_empty() {
            return Ok(Self::trivial(base, group));
        }
        let mut given = BTreeMap::new();
        for (g, dims) in &r.action {
            let g = parse_index(g, "element")?;
            let mut perms: Vec<Option<SignedPermutation>> = vec![None; base.ranks().len()];
            for (n, perm) in dims {
                let n = parse_index(n, "dimension")?;
                if n >= perms.len() {
                    return Err(Error::InvalidAction(format!("element {g} acts in dimension {n} above the top cell")));
                }
                perms[n] = Some(perm.clone());
            }
            let perms = perms
                .into_iter()
                .enumerate()
                .map(|(n, p)| match p {
                    Some(p) => Ok(p),
                    None if base.ranks()[n] == 0 => Ok(Vec::new()),
                    None => Err(Error::InvalidAction(format!("element {g} has no action on the {n}-cells"))),
                })
                .collect::<Result<Vec<_>>>()?;
            given.insert(g, perms);
        }
        Self::new(base, group, given)
    }

    pub fn to_repr(&self) -> GCwRepr {
        let c = self.base.to_repr();
        let action = self
            .group
            .elements()
            .filter(|&g| g != self.group.identity())
            .map(|g| {
                let dims = self.action[g]
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_empty())
                    .map(|(n, p)| (n.to_string(), p.clone()))
                    .collect();
                (g.to_string(), dims)
            })
            .collect();
        GCwRepr { ranks: c.ranks, boundaries: c.boundaries, labels: c.labels, group: self.group.to_spec(), action }
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        for a in g.elements() {
            for b in g.elements() {
                if compose(&self.action[a], &self.action[b]) != self.action[g.mul(a, b)] {
                    return Err(Error::InvalidAction(format!("action of {a} * {b} is not the composite: not a homomorphism")));
                }
            }
        }
        for a in g.elements() {
            for n in 1..self.base.ranks().len() {
                let d = self.base.chain().boundary(n).expect("degree in range");
                let left = self.rho(a, n - 1).mul(d)?;
                let right = d.mul(&self.rho(a, n))?;
                if left != right {
                    return Err(Error::InvalidAction(format!("element {a} does not commute with d_{n}")));
                }
            }
            if self.action[a].first().is_some_and(|vertices| vertices.iter().any(|&(_, s)| s != 1)) {
                return Err(Error::InvalidAction(format!("element {a} acts on a vertex with sign -1")));
            }
            for (n, perm) in self.action[a].iter().enumerate() {
                for (c, &(img, s)) in perm.iter().enumerate() {
                    if img == c && s != 1 {
                        return Err(Error::InvalidAction(format!(
                            "element {a} reverses the orientation of {n}-cell {c}; subdivide the complex first"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &CwComplex {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self, g: usize) -> &[SignedPermutation] {
        &self.action[g]
    }

    /// The matrix of `g` on the `n`-chains.
    pub fn rho(&self, g: usize, n: usize) -> IntMatrix {
        let perm = &self.action[g][n];
        let triplets: Vec<(usize, usize, BigInt)> = perm.iter().enumerate().map(|(c, &(img, s))| (img, c, BigInt::from(s))).collect();
        IntMatrix::from_triplets(perm.len(), perm.len(), &triplets).expect("valid permutation")
    }

    /// Cells fixed by `g`, with the restricted action of the centralizer of
    /// `g` (re-indexed as a group in its own right).
    pub fn fixed_subcomplex(&self, g: usize) -> Result<GCwComplex> {
        if g >= self.group.order() {
            return Err(Error::InvalidArgument(format!("element {g} is out of range")));
        }
        let cells: Vec<Vec<usize>> = self.action[g]
            .iter()
            .map(|perm| perm.iter().enumerate().filter(|(c, &(img, _))| img == *c).map(|(c, _)| c).collect())
            .collect();
        let sub = self.base.subcomplex(&cells)?;
        let (centralizer, embedding) = self.group.subgroup(&self.group.centralizer(g))?;
        let position: Vec<BTreeMap<usize, usize>> =
            cells.iter().map(|cs| cs.iter().enumerate().map(|(i, &c)| (c, i)).collect()).collect();
        let action = embedding
            .iter()
            .map(|&h| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(n, cs)| {
                        cs.iter()
                            .map(|&c| {
                                let (img, s) = self.action[h][n][c];
                                (position[n][&img], s)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(GCwComplex { base: sub, group: centralizer, action })
    }

    /// Rational Betti numbers of the quotient by the subgroup formed by the
    /// given elements, from the orbit-averaged (invariant) chains.
    pub fn rational_quotient_cohomology(&self, subgroup: &[usize]) -> Result<Vec<usize>> {
        let (_, elements) = self.group.subgroup(subgroup)?;
        let len = self.base.ranks().len();
        let averaging: Vec<IntMatrix> = (0..len)
            .map(|n| {
                let r = self.base.ranks()[n];
                elements.iter().fold(IntMatrix::zeros(r, r), |acc, &h| acc.add(&self.rho(h, n)).expect("same shape"))
            })
            .collect();
        let invariant_rank: Vec<usize> = averaging.iter().map(|s| smith_normal_form(s).rank).collect();
        // Rank of d_n restricted to the invariant n-chains.
        let boundary_rank: Vec<usize> = (0..len)
            .map(|n| match self.base.chain().boundary(n) {
                Some(d) => smith_normal_form(&d.mul(&averaging[n]).expect("shapes")).rank,
                None => 0,
            })
            .collect();
        Ok((0..len)
            .map(|n| invariant_rank[n] - boundary_rank[n] - boundary_rank.get(n + 1).copied().unwrap_or(0))
            .collect())
    }

    /// Rational Betti numbers of the quotient by the whole group.
    pub fn rational_quotient_betti(&self) -> Vec<usize> {
        let all: Vec<usize> = self.group.elements().collect();
        self.rational_quotient_cohomology(&all).expect("the whole group is a subgroup")
    }

    /// The quotient complex `G\X`, one cell per orbit, with the boundary
    /// maps of the coinvariant chains. Admissibility makes every orbit cell
    /// a well-defined generator.
    pub fn quotient(&self) -> CwComplex {
        let ranks = self.base.ranks();
        // For every cell: index of its orbit and the sign relating it to the
        // orbit representative in the coinvariants.
        let mut class: Vec<Vec<(usize, i64)>> = Vec::with_capacity(ranks.len());
        let mut reps: Vec<Vec<usize>> = Vec::with_capacity(ranks.len());
        for (n, &r) in ranks.iter().enumerate() {
            let mut cls = vec![(usize::MAX, 0); r];
            let mut rs = Vec::new();
            for c in 0..r {
                if cls[c].0 != usize::MAX {
                    continue;
                }
                for g in self.group.elements() {
                    let (img, s) = self.action[g][n][c];
                    cls[img] = (rs.len(), s);
                }
                rs.push(c);
            }
            class.push(cls);
            reps.push(rs);
        }
        let mut mats = Vec::new();
        for n in 1..ranks.len() {
            let d = self.base.chain().boundary(n).expect("degree in range");
            let mut m = vec![vec![BigInt::from(0); reps[n].len()]; reps[n - 1].len()];
            for (j, &c) in reps[n].iter().enumerate() {
                for i in 0..d.rows() {
                    let a = d.get(i, c);
                    if a.sign() != num_bigint::Sign::NoSign {
                        let (o, s) = class[n - 1][i];
                        m[o][j] += a * s;
                    }
                }
            }
            mats.push(IntMatrix::from_rows(reps[n - 1].len(), reps[n].len(), &m).expect("shape"));
        }
        let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
        let labels = reps
            .iter()
            .enumerate()
            .map(|(n, rs)| rs.iter().map(|&c| self.base.labels()[n][c].clone()).collect())
            .collect();
        let chain = crate::linalg::ChainComplex::new(counts, mats).expect("coinvariants of a complex form a complex");
        CwComplex::new(chain, Some(labels)).expect("vertices carry sign +1")
    }

    /// Number of cell orbits in each dimension.
    pub fn orbit_counts(&self) -> Vec<usize> {
        (0..self.base.ranks().len())
            .map(|n| {
                let r = self.base.ranks()[n];
                let mut seen = vec![false; r];
                let mut count = 0;
                for c in 0..r {
                    if !seen[c] {
                        count += 1;
                        for g in self.group.elements() {
                            seen[self.action[g][n][c].0] = true;
                        }
                    }
                }
                count
            })
            .collect()
    }

    /// A point with the trivial action.
    pub fn point(group: FiniteGroup) -> Self {
        Self::trivial(CwComplex::point(), group)
    }

    /// The interval `[-1, 1]` with vertices `-1, 0, 1` and edges `[-1, 0]`,
    /// `[0, 1]`, reflected by `Z/2` through its midpoint.
    pub fn interval_with_flip() -> Self {
        let d1 = IntMatrix::from_i64(&[&[-1, 0], &[1, -1], &[0, 1]]).expect("shape");
        let base = CwComplex::from_boundaries(vec![3, 2], vec![d1]).expect("valid");
        let flip = vec![vec![(2, 1), (1, 1), (0, 1)], vec![(1, -1), (0, -1)]];
        Self::new(base, FiniteGroup::cyclic(2), BTreeMap::from([(1, flip)])).expect("valid action")
    }

    /// A circle with four vertices and four edges, `Z/2` acting by the
    /// antipodal map.
    pub fn antipodal_circle() -> Self {
        Self::rotated_polygon(4, 2).expect("valid action")
    }

    /// A `k`-gon circle rotated by `Z/m`, `m | k`, the generator advancing
    /// every cell by `k / m` steps.
    pub fn rotated_polygon(k: usize, m: usize) -> Result<Self> {
        if k == 0 || m == 0 || k % m != 0 {
            return Err(Error::InvalidArgument(format!("cannot rotate a {k}-gon by Z/{m}")));
        }
        let mut t = Vec::new();
        for i in 0..k {
            t.push((i, i, BigInt::from(-1)));
            t.push(((i + 1) % k, i, BigInt::from(1)));
        }
        let d1 = if k == 1 { IntMatrix::zeros(1, 1) } else { IntMatrix::from_triplets(k, k, &t)? };
        let base = CwComplex::from_boundaries(vec![k, k], vec![d1])?;
        let step = k / m;
        let gen: Vec<SignedPermutation> = (0..2).map(|_| (0..k).map(|i| ((i + step) % k, 1)).collect()).collect();
        let given = if m == 1 { BTreeMap::new() } else { BTreeMap::from([(1, gen)]) };
        Self::new(base, FiniteGroup::cyclic(m), given)
    }

    /// A disk cut into `k` triangles around its centre, rotated by `Z/k`.
    /// The centre is the only cell fixed by a non-trivial rotation.
    pub fn rotated_disk(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("a disk needs at least one sector".into()));
        }
        // Vertices: centre 0, rim 1..=k. Edges: spokes 0..k, rim k..2k.
        // Face i is bounded by spoke i, rim edge i, and minus spoke i + 1.
        let rim = |i: usize| 1 + i % k;
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for i in 0..k {
            d1.push((0, i, BigInt::from(-1)));
            d1.push((rim(i), i, BigInt::from(1)));
            if k > 1 {
                d1.push((rim(i), k + i, BigInt::from(-1)));
                d1.push((rim(i + 1), k + i, BigInt::from(1)));
            }
            d2.push((i, i, BigInt::from(1)));
            d2.push((k + i, i, BigInt::from(1)));
            if k > 1 {
                d2.push(((i + 1) % k, i, BigInt::from(-1)));
            } else {
                d2.retain(|&(r, c, _)| !(r == 0 && c == 0));
            }
        }
        let base = CwComplex::from_boundaries(
            vec![k + 1, 2 * k, k],
            vec![IntMatrix::from_triplets(k + 1, 2 * k, &d1)?, IntMatrix::from_triplets(2 * k, k, &d2)?],
        )?;
        let shift = |i: usize| (i + 1) % k;
        let gen = vec![
            std::iter::once((0, 1)).chain((0..k).map(|i| (rim(i + 1), 1))).collect(),
            (0..k).map(|i| (shift(i), 1)).chain((0..k).map(|i| (k + shift(i), 1))).collect(),
            (0..k).map(|i| (shift(i), 1)).collect(),
        ];
        let given = if k == 1 { BTreeMap::new() } else { BTreeMap::from([(1, gen)]) };
        Self::new(base, FiniteGroup::cyclic(k), given)
    }
}

fn check_shape(ranks: &[usize], perms: &[SignedPermutation], g: usize) -> Result<()> {
    if perms.len() != ranks.len() {
        return Err(Error::InvalidAction(format!("element {g} acts on {} dimensions, expected {}", perms.len(), ranks.len())));
    }
    for (n, (perm, &r)) in perms.iter().zip(ranks).enumerate() {
        if perm.len() != r {
            return Err(Error::InvalidAction(format!("element {g} moves {} of the {r} cells in dimension {n}", perm.len())));
        }
        let mut hit = vec![false; r];
        for &(img, s) in perm {
            if img >= r || hit[img] || (s != 1 && s != -1) {
                return Err(Error::InvalidAction(format!("element {g} does not act by a signed permutation in dimension {n}")));
            }
            hit[img] = true;
        }
    }
    Ok(())
}
