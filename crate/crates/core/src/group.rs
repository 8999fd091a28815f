//! Permutation groups given by generators, backed by a stabilizer chain.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::search::{subgroup_search, SearchProblem};

/// A subgroup of `Sym(degree)`.
///
/// Generators are kept exactly as given (including identities) so that maps
/// defined generator-by-generator stay aligned with them.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Arc<Chain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order())?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::Input("degree must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                actual: g.degree(),
            });
        }
        let chain = Chain::new(degree, &gens);
        Ok(PermGroup {
            degree,
            gens,
            chain: Arc::new(chain),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Perm>, chain: Chain) -> PermGroup {
        PermGroup {
            degree,
            gens,
            chain: Arc::new(chain),
        }
    }

    pub(crate) fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Generators with identities removed.
    pub fn nontrivial_generators(&self) -> Vec<Perm> {
        self.gens.iter().filter(|g| !g.is_identity()).cloned().collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.chain.strong_gens()
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    /// The order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    /// Base points of the stabilizer chain, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.chain.base().into_iter().map(|b| b + 1).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels.is_empty()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                actual: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    /// Membership without the degree check.
    pub(crate) fn has(&self, p: &Perm) -> bool {
        self.chain.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.has(g))
    }

    /// Same set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.is_subgroup_of(other)
    }

    /// Whether `self` is a normal subgroup of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g
                .gens
                .iter()
                .all(|x| self.gens.iter().all(|h| self.has(&h.conj(x))))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.nontrivial_generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// `|self : sub|`, assuming `sub` is a subgroup.
    pub fn index_of(&self, sub: &PermGroup) -> BigUint {
        self.order() / sub.order()
    }

    /// The group generated by `self` and `extra`.
    pub fn closure(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    pub(crate) fn orbit0(&self, x: usize) -> Vec<usize> {
        orbit_of(&self.gens, self.degree, x)
    }

    /// Orbit of the 1-based point `x`, sorted.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        let mut o: Vec<usize> = self.orbit0(x - 1).into_iter().map(|y| y + 1).collect();
        o.sort_unstable();
        Ok(o)
    }

    /// All orbits as sorted 0-based point lists, ordered by smallest point.
    pub(crate) fn orbits0(&self) -> Vec<Vec<usize>> {
        orbits_of(&self.gens, self.degree)
    }

    /// All orbits, 1-based, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.orbits0()
            .into_iter()
            .map(|o| o.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit0(0).len() == self.degree
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Stabilizer of the 1-based point `x`.
    pub fn stabilizer(&self, x: usize) -> Result<PermGroup> {
        self.check_point(x)?;
        Ok(self.stabilizer0(x - 1))
    }

    pub(crate) fn stabilizer0(&self, x: usize) -> PermGroup {
        let mut chain = Chain::with_base(self.degree, self.strong_generators(), &[x], None);
        let gens = chain.levels.get(1).map(|l| l.gens.clone()).unwrap_or_default();
        chain.levels.remove(0);
        PermGroup::from_parts(self.degree, gens, chain)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        self.chain.random_element(rng)
    }

    /// Every element; only sensible for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        self.chain.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        out
    }

    /// The group acting on an invariant set of 0-based points, relabelled
    /// so that `points[i]` becomes point `i`. Generators stay aligned.
    pub(crate) fn restricted0(&self, points: &[usize]) -> Result<PermGroup> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.restrict(points))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(points.len(), gens)
    }

    /// Derived subgroup.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = self.nontrivial_generators();
        let mut seeds = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        normal_closure(self, &seeds).expect("commutators lie in the group")
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }
}

pub(crate) fn orbit_of(gens: &[Perm], degree: usize, x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        for g in gens {
            let z = g.image(y);
            if !seen[z] {
                seen[z] = true;
                orbit.push(z);
            }
        }
        i += 1;
    }
    orbit
}

pub(crate) fn orbits_of(gens: &[Perm], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for x in 0..degree {
        if seen[x] {
            continue;
        }
        let mut o = orbit_of(gens, degree, x);
        for &y in &o {
            seen[y] = true;
        }
        o.sort_unstable();
        out.push(o);
    }
    out
}

/// Builds a group, failing on generators of the wrong degree.
pub fn make_group(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
    PermGroup::new(degree, gens)
}

/// Smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &PermGroup, seeds: &[Perm]) -> Result<PermGroup> {
    for s in seeds {
        if !g.contains(s)? {
            return Err(Error::NotInGroup(format!("seed {s} is not in the group")));
        }
    }
    let mut chain = Chain::new(g.degree(), &[]);
    let mut gens = Vec::new();
    let mut queue: VecDeque<Perm> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
    let conjugators = g.nontrivial_generators();
    while let Some(x) = queue.pop_front() {
        if chain.contains(&x) {
            continue;
        }
        chain.add_generator(&x);
        for c in &conjugators {
            queue.push_back(x.conj(c));
        }
        gens.push(x);
    }
    Ok(PermGroup::from_parts(g.degree(), gens, chain))
}

/// `C_g(n)`: elements of `g` commuting with every element of `n`.
///
/// Backtrack over the chain of `g`. Fixing the image of one point of an
/// `n`-orbit fixes the images of the whole orbit, which is what prunes.
pub fn centralizer(g: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: n.degree(),
        });
    }
    let ngens = n.nontrivial_generators();
    if ngens.is_empty() {
        return Ok(g.clone());
    }
    let commutes = |x: &Perm| ngens.iter().all(|y| x.mul(y) == y.mul(x));
    let known: Vec<Perm> = g.nontrivial_generators().into_iter().filter(|x| commutes(x)).collect();
    let degree = g.degree();
    let prune = |pairs: &[(usize, usize)]| propagate_commuting(&ngens, degree, pairs);
    let problem = SearchProblem {
        accept: &commutes,
        prune: &prune,
        known,
        priority: orbit_priority(n),
    };
    Ok(subgroup_search(g, &problem))
}

/// `N_g(h)`: elements of `g` conjugating `h` to itself.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: h.degree(),
        });
    }
    let hgens = h.nontrivial_generators();
    if hgens.is_empty() {
        return Ok(g.clone());
    }
    let orbits = h.orbits0();
    let mut orbit_id = vec![0usize; g.degree()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_id[x] = i;
        }
    }
    let size = |x: usize| orbits[orbit_id[x]].len();
    let prune = |pairs: &[(usize, usize)]| {
        let Some(&(a, alpha)) = pairs.last() else {
            return true;
        };
        if size(a) != size(alpha) {
            return false;
        }
        pairs[..pairs.len() - 1].iter().all(|&(b, beta)| {
            (orbit_id[a] == orbit_id[b]) == (orbit_id[alpha] == orbit_id[beta])
        })
    };
    let accept = |x: &Perm| hgens.iter().all(|y| h.has(&y.conj(x)));
    let known: Vec<Perm> = hgens.iter().filter(|y| g.has(y)).cloned().collect();
    let problem = SearchProblem {
        accept: &accept,
        prune: &prune,
        known,
        priority: orbit_priority(h),
    };
    Ok(subgroup_search(g, &problem))
}

/// Points grouped by orbit of `h`, largest orbits first.
fn orbit_priority(h: &PermGroup) -> Vec<usize> {
    let mut orbits: Vec<Vec<usize>> = h
        .orbits0()
        .into_iter()
        .map(|o| orbit_of(h.generators(), h.degree(), o[0]))
        .collect();
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    orbits.concat()
}

/// Whether a partial map given by `pairs` extends consistently to a
/// bijection commuting with every permutation in `gens`.
fn propagate_commuting(gens: &[Perm], degree: usize, pairs: &[(usize, usize)]) -> bool {
    const NONE: u32 = u32::MAX;
    let mut fwd = vec![NONE; degree];
    let mut bwd = vec![NONE; degree];
    let mut queue = Vec::new();
    let assign = |a: usize, b: usize, fwd: &mut Vec<u32>, bwd: &mut Vec<u32>, q: &mut Vec<(usize, usize)>| {
        match (fwd[a], bwd[b]) {
            (NONE, NONE) => {
                fwd[a] = b as u32;
                bwd[b] = a as u32;
                q.push((a, b));
                true
            }
            (x, y) => x == b as u32 && y == a as u32,
        }
    };
    for &(a, b) in pairs {
        if !assign(a, b, &mut fwd, &mut bwd, &mut queue) {
            return false;
        }
    }
    while let Some((a, b)) = queue.pop() {
        for x in gens {
            if !assign(x.image(a), x.image(b), &mut fwd, &mut bwd, &mut queue) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    /// Closure by brute force: every product of generators.
    fn brute_elements(g: &PermGroup) -> HashSet<Perm> {
        let mut seen = HashSet::new();
        let id = Perm::identity(g.degree());
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in g.generators() {
                let y = x.mul(s);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn make_group_examples() {
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert_eq!(brute_elements(&s5).len(), 120);
        assert_eq!(s5.order(), BigUint::from(120u32));
        assert_eq!(grp(3, &[]).order(), BigUint::from(1u32));
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        assert_eq!(brute_elements(&a5).len(), 60);
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert!(matches!(
            PermGroup::new(5, vec![p("(1 2)", 4)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert!(!a5.contains(&p("(1 2)", 5)).unwrap());
        assert!(a5.contains(&p("(1 2 3)", 5)).unwrap());
        assert!(s5.contains(&Perm::identity(5)).unwrap());
        assert!(a5.contains(&Perm::identity(4)).is_err());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(grp(4, &["(1 2)(3 4)"]).orbit(1).unwrap(), vec![1, 2]);
        assert_eq!(grp(5, &["(1 2 3 4 5)", "(1 2)"]).orbit(3).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(grp(5, &["(1 2 3)"]).orbit(4).unwrap(), vec![4]);
        assert!(grp(5, &["(1 2 3)"]).orbit(6).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let st = s3.stabilizer(3).unwrap();
        let brute: Vec<Perm> = brute_elements(&s3).into_iter().filter(|g| g.image(2) == 2).collect();
        assert_eq!(st.order(), BigUint::from(brute.len()));
        assert!(st.contains(&p("(1 2)", 3)).unwrap());
        assert!(grp(4, &[]).stabilizer(2).unwrap().is_trivial());
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let st = a5.stabilizer(1).unwrap();
        assert_eq!(st.order(), BigUint::from(12u32));
        assert!(st.generators().iter().all(|g| g.image(0) == 0));
        for x in 1..=5 {
            let o = a5.orbit(x).unwrap().len();
            assert_eq!(BigUint::from(o) * a5.stabilizer(x).unwrap().order(), a5.order());
        }
    }

    #[test]
    fn normal_closure_examples() {
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert_eq!(normal_closure(&s5, &[p("(1 2 3)", 5)]).unwrap().order(), BigUint::from(60u32));
        assert!(normal_closure(&s5, &[Perm::identity(5)]).unwrap().is_trivial());
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = normal_closure(&s4, &[p("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(v4.order(), BigUint::from(4u32));
        assert!(v4.is_normal_in(&s4));
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        assert!(matches!(
            normal_closure(&a4, &[p("(1 2)", 4)]),
            Err(Error::NotInGroup(_))
        ));
    }

    fn brute_centralizer(g: &PermGroup, n: &PermGroup) -> usize {
        brute_elements(g)
            .into_iter()
            .filter(|x| n.generators().iter().all(|y| x.mul(y) == y.mul(x)))
            .count()
    }

    #[test]
    fn centralizer_examples() {
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        assert_eq!(brute_centralizer(&s5, &a5), 1);
        assert!(centralizer(&s5, &a5).unwrap().is_trivial());
        let c6 = grp(6, &["(1 2 3 4 5 6)"]);
        assert!(centralizer(&c6, &c6).unwrap().same_elements(&c6));
        let s2s3 = grp(5, &["(1 2)", "(3 4 5)", "(3 4)"]);
        let s3 = grp(5, &["(3 4 5)", "(3 4)"]);
        let c = centralizer(&s2s3, &s3).unwrap();
        assert!(c.contains(&p("(1 2)", 5)).unwrap());
        assert_eq!(c.order(), BigUint::from(brute_centralizer(&s2s3, &s3)));
    }

    #[test]
    fn centralizer_matches_enumeration() {
        let s6 = grp(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        for n in [
            grp(6, &["(1 2)(3 4)"]),
            grp(6, &["(1 2 3)(4 5 6)"]),
            grp(6, &["(1 2)", "(3 4)"]),
            grp(6, &["(1 2 3 4 5 6)"]),
            grp(6, &["(1 2 3)"]),
        ] {
            let c = centralizer(&s6, &n).unwrap();
            assert_eq!(c.order(), BigUint::from(brute_centralizer(&s6, &n)), "{n:?}");
        }
    }

    fn brute_normalizer(g: &PermGroup, h: &PermGroup) -> usize {
        brute_elements(g)
            .into_iter()
            .filter(|x| h.generators().iter().all(|y| h.has(&y.conj(x))))
            .count()
    }

    #[test]
    fn normalizer_examples() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let c4 = grp(4, &["(1 2 3 4)"]);
        let nm = normalizer(&s4, &c4).unwrap();
        assert_eq!(nm.order(), BigUint::from(8u32));
        assert_eq!(brute_normalizer(&s4, &c4), 8);
        assert!(normalizer(&s4, &s4).unwrap().same_elements(&s4));
        let s6 = grp(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        for h in [
            grp(6, &["(1 2)(3 4)"]),
            grp(6, &["(1 2 3)(4 5 6)", "(1 4)(2 5)(3 6)"]),
            grp(6, &["(1 2 3)"]),
            grp(6, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
        ] {
            assert_eq!(normalizer(&s6, &h).unwrap().order(), BigUint::from(brute_normalizer(&s6, &h)), "{h:?}");
        }
    }

    #[test]
    fn lagrange_and_orbit_stabilizer() {
        let g = grp(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        for x in 1..=7 {
            let st = g.stabilizer(x).unwrap();
            assert_eq!(&g.order() % st.order(), BigUint::from(0u32));
            assert_eq!(BigUint::from(g.orbit(x).unwrap().len()) * st.order(), g.order());
        }
    }
}
