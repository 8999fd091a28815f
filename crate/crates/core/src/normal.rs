//! Direct factors of semisimple normal subgroups, the action of the ambient
//! group on them, projections, and the almost simple group induced on a
//! factor.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{centralizer, normal_closure, normalizer, PermGroup};
use crate::hom::{coset_action, GroupHom};
use crate::perm::Perm;

const RANDOM_TRIES: usize = 12;
const CLASS_SCAN_CAP: u64 = 500_000;
const DESCENT_SEED: u64 = 0x5175_6f74;

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// A power of `x` of prime order (the identity stays the identity).
pub(crate) fn prime_order_power(x: &Perm) -> Perm {
    let o = x.order();
    if o == 1 {
        return x.clone();
    }
    x.pow((o / smallest_prime_factor(o)) as i64)
}

/// Looks for an element of `m` whose normal closure in `ambient` is a
/// proper subgroup of `m`, one conjugacy class of `ambient` at a time.
fn smaller_normal_by_classes(ambient: &PermGroup, m: &PermGroup) -> Result<Option<PermGroup>> {
    let order = m.order();
    if order > BigUint::from(CLASS_SCAN_CAP) {
        return Err(Error::OrderCapExceeded {
            order: order.to_string(),
            cap: CLASS_SCAN_CAP,
        });
    }
    let conj = ambient.nontrivial_generators();
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut result = None;
    m.chain().for_each_element(|x| {
        if x.is_identity() || seen.contains(x) {
            return true;
        }
        let mut class = vec![x.clone()];
        seen.insert(x.clone());
        let mut i = 0;
        while i < class.len() {
            for c in &conj {
                let y = class[i].conj(c);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    class.push(y);
                }
            }
            i += 1;
        }
        let c = normal_closure(ambient, &[prime_order_power(x)]).expect("element of a subgroup");
        if c.order() < order {
            result = Some(c);
            return false;
        }
        true
    });
    Ok(result)
}

/// A minimal normal subgroup of `ambient` contained in `inside`, which must
/// itself be a nontrivial normal subgroup of `ambient`.
///
/// Descends through normal closures of prime-order elements drawn from a
/// fixed-seed generator, and certifies the end point by running through
/// every class of `ambient` inside it.
pub(crate) fn minimal_normal_inside(ambient: &PermGroup, inside: &PermGroup) -> Result<PermGroup> {
    if inside.is_trivial() {
        return Err(Error::PreconditionFailed("trivial subgroup has no minimal normal subgroup".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DESCENT_SEED);
    let mut m = inside.clone();
    'descent: loop {
        let mut tries = 0;
        while tries < RANDOM_TRIES {
            tries += 1;
            let x = prime_order_power(&m.random_element(&mut rng));
            if x.is_identity() {
                continue;
            }
            let c = normal_closure(ambient, &[x])?;
            if c.order() < m.order() {
                m = c;
                continue 'descent;
            }
        }
        match smaller_normal_by_classes(ambient, &m)? {
            Some(c) => m = c,
            None => return Ok(m),
        }
    }
}

/// Whether `s` is a nontrivial simple group.
pub fn is_simple(s: &PermGroup) -> Result<bool> {
    Ok(!s.is_trivial() && smaller_normal_by_classes(s, s)?.is_none())
}

fn smallest_moved(g: &PermGroup) -> usize {
    g.generators()
        .iter()
        .filter_map(|x| x.moved_points().min())
        .min()
        .unwrap_or(usize::MAX)
}

/// The simple direct factors of `n`, sorted by smallest moved point.
pub fn simple_factors(n: &PermGroup) -> Result<Vec<PermGroup>> {
    if n.is_trivial() {
        return Err(Error::PreconditionFailed("the trivial group has no simple factors".into()));
    }
    let mut found = Vec::new();
    let mut rest = n.clone();
    while !rest.is_trivial() {
        let m = minimal_normal_inside(&rest, &rest)?;
        if m.is_abelian() {
            return Err(Error::NotSemisimple(format!(
                "abelian minimal normal subgroup of order {}",
                m.order()
            )));
        }
        if !is_simple(&m)? {
            return Err(Error::NotSemisimple(format!(
                "minimal normal subgroup of order {} is not simple",
                m.order()
            )));
        }
        let c = centralizer(&rest, &m)?;
        if m.order() * c.order() != rest.order() {
            return Err(Error::NotSemisimple(format!(
                "simple normal subgroup of order {} is not a direct factor",
                m.order()
            )));
        }
        found.push(m);
        rest = c;
    }
    found.sort_by_key(smallest_moved);
    Ok(found)
}

/// Conjugation action of `g` on a list of groups it permutes.
pub fn factor_action(g: &PermGroup, factors: &[PermGroup]) -> Result<GroupHom> {
    let witnesses: Vec<Perm> = factors
        .iter()
        .map(|s| {
            s.nontrivial_generators()
                .into_iter()
                .next()
                .ok_or_else(|| Error::Input("trivial factor".into()))
        })
        .collect::<Result<_>>()?;
    let images = g
        .generators()
        .iter()
        .map(|x| {
            let img = witnesses
                .iter()
                .map(|s| {
                    let y = s.conj(x);
                    factors
                        .iter()
                        .position(|f| f.has(&y))
                        .ok_or_else(|| Error::NotNormal("factors are not permuted by conjugation".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Perm::from_images0(img)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(g.clone(), factors.len(), images)
}

/// Conjugation action of `h` on a union of its classes inside `s` that
/// generates `s`; the kernel is `C_h(s)`.
fn conjugation_rep(h: &PermGroup, s: &PermGroup) -> Result<GroupHom> {
    let conj = h.nontrivial_generators();
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut classes: Vec<Vec<Perm>> = Vec::new();
    for x in s.elements() {
        if x.is_identity() || seen.contains(&x) {
            continue;
        }
        seen.insert(x.clone());
        let mut class = vec![x];
        let mut i = 0;
        while i < class.len() {
            for c in &conj {
                let y = class[i].conj(c);
                if !s.has(&y) {
                    return Err(Error::NotNormal("subgroup is not normalized".into()));
                }
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    class.push(y);
                }
            }
            i += 1;
        }
        classes.push(class);
    }
    classes.sort_by_key(|c| c.len());
    let order = s.order();
    let generates = |cs: &[&Vec<Perm>]| {
        let gens: Vec<Perm> = cs.iter().flat_map(|c| c.iter().cloned()).collect();
        PermGroup::new(s.degree(), gens).map(|g| g.order() == order)
    };
    let mut chosen: Vec<&Vec<Perm>> = Vec::new();
    if let Some(c) = classes.iter().find(|c| generates(&[c]).unwrap_or(false)) {
        chosen.push(c);
    } else {
        for c in &classes {
            chosen.push(c);
            if generates(&chosen)? {
                break;
            }
        }
    }
    let points: Vec<&Perm> = chosen.iter().flat_map(|c| c.iter()).collect();
    let index: HashMap<&Perm, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let images = h
        .generators()
        .iter()
        .map(|g| {
            let img = points.iter().map(|x| index[&x.conj(g)]).collect();
            Perm::from_images0(img)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(h.clone(), points.len(), images)
}

type Projection = (GroupHom, GroupHom);

/// `N = S_1 x ... x S_k` inside `G`, with the action of `G` on the factors
/// and `T = N_G(S_1)/C_G(S_1)` realized as a permutation group.
pub struct SocleDecomposition {
    g: PermGroup,
    n: PermGroup,
    factors: Vec<PermGroup>,
    factor_action: GroupHom,
    t_hom: GroupHom,
    t_socle_image: PermGroup,
    projections: Vec<OnceLock<Projection>>,
}

impl std::fmt::Debug for SocleDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SocleDecomposition")
            .field("k", &self.factors.len())
            .field("factor_order", &self.factors[0].order())
            .field("t_order", &self.t_rep().order())
            .finish()
    }
}

/// Decomposes a normal subgroup `n` of `g` into simple direct factors.
pub fn socle_decomposition(g: &PermGroup, n: &PermGroup) -> Result<SocleDecomposition> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: n.degree(),
        });
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("decomposed subgroup must be normal".into()));
    }
    let factors = simple_factors(n)?;
    let action = factor_action(g, &factors)?;
    let stab = action.image().stabilizer0(0);
    let norm = action.preimage(&stab)?;
    let t_hom = conjugation_rep(&norm, &factors[0])?;
    let t_socle_image = t_hom.map_subgroup(&factors[0])?;
    let projections = factors.iter().map(|_| OnceLock::new()).collect();
    Ok(SocleDecomposition {
        g: g.clone(),
        n: n.clone(),
        factors,
        factor_action: action,
        t_hom,
        t_socle_image,
        projections,
    })
}

impl SocleDecomposition {
    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    pub fn normal_subgroup(&self) -> &PermGroup {
        &self.n
    }

    pub fn factors(&self) -> &[PermGroup] {
        &self.factors
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_action(&self) -> &GroupHom {
        &self.factor_action
    }

    /// `N_G(S_1)`.
    pub fn factor_normalizer(&self) -> &PermGroup {
        self.t_hom.domain()
    }

    /// Map from `N_G(S_1)` onto the concrete copy of `T`.
    pub fn t_hom(&self) -> &GroupHom {
        &self.t_hom
    }

    pub fn t_rep(&self) -> &PermGroup {
        self.t_hom.image()
    }

    pub fn t_socle_image(&self) -> &PermGroup {
        &self.t_socle_image
    }

    /// `|T/S|`.
    pub fn outer_order(&self) -> BigUint {
        self.t_rep().order() / self.t_socle_image.order()
    }

    fn projection(&self, i: usize) -> Result<&Projection> {
        if let Some(p) = self.projections[i].get() {
            return Ok(p);
        }
        let others: Vec<Perm> = self
            .factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, f)| f.generators().iter().cloned())
            .collect();
        let others = PermGroup::new(self.n.degree(), others)?;
        let coset = coset_action(&self.n, &others)?;
        let images = self.factors[i]
            .generators()
            .iter()
            .map(|s| coset.apply(s))
            .collect::<Result<Vec<_>>>()?;
        let onto = GroupHom::new(self.factors[i].clone(), coset.codomain_degree(), images)?;
        Ok(self.projections[i].get_or_init(|| (coset, onto)))
    }
}

/// The component in `S_i` of an element `x` of `N` (factor indices start
/// at 0).
pub fn projection_onto_factor(dec: &SocleDecomposition, x: &Perm, i: usize) -> Result<Perm> {
    if i >= dec.k() {
        return Err(Error::Input(format!("factor index {i} out of range for {} factors", dec.k())));
    }
    if !dec.n.contains(x)? {
        return Err(Error::NotInGroup(format!("{x} is not in the normal subgroup")));
    }
    if dec.k() == 1 {
        return Ok(x.clone());
    }
    let (coset, onto) = dec.projection(i)?;
    onto.lift(&coset.apply(x)?)
}

/// Whether `h <= N` projects onto every factor.
pub fn is_subdirect(dec: &SocleDecomposition, h: &PermGroup) -> Result<bool> {
    if !h.is_subgroup_of(&dec.n) {
        return Err(Error::NotInGroup("subgroup is not contained in N".into()));
    }
    for (i, s) in dec.factors.iter().enumerate() {
        let gens = h
            .generators()
            .iter()
            .map(|x| projection_onto_factor(dec, x, i))
            .collect::<Result<Vec<_>>>()?;
        if PermGroup::new(h.degree(), gens)?.order() != s.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that a subdirect subgroup `h` of `N` is self-normalizing in `N`.
pub fn check_normsd(dec: &SocleDecomposition, h: &PermGroup) -> Result<()> {
    if !is_subdirect(dec, h)? {
        return Err(Error::PreconditionFailed("subgroup is not subdirect".into()));
    }
    let norm = normalizer(&dec.n, h)?;
    if !norm.same_elements(h) {
        return Err(Error::LemmaViolated(format!(
            "normalizer in N has order {}, subgroup has order {}",
            norm.order(),
            h.order()
        )));
    }
    Ok(())
}

/// The concrete copy of `N_G(S_1)/C_G(S_1)` recorded in `dec`.
pub fn induced_t(g: &PermGroup, dec: &SocleDecomposition) -> Result<PermGroup> {
    if g.degree() != dec.g.degree() || !g.same_elements(&dec.g) {
        return Err(Error::PreconditionFailed("decomposition was computed for another group".into()));
    }
    Ok(dec.t_rep().clone())
}

/// Whether `n` is a minimal normal subgroup of `g`.
pub fn is_minimal_normal(g: &PermGroup, n: &PermGroup) -> Result<bool> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: n.degree(),
        });
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("subgroup is not normal".into()));
    }
    if n.is_trivial() {
        return Ok(false);
    }
    if n.is_abelian() {
        return Ok(smaller_normal_by_classes(g, n)?.is_none());
    }
    let factors = match simple_factors(n) {
        Ok(f) => f,
        Err(Error::NotSemisimple(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !factor_action(g, &factors)?.image().is_transitive() {
        return Ok(false);
    }
    let s = factors[0].nontrivial_generators().remove(0);
    Ok(normal_closure(g, &[s])?.order() == n.order())
}

/// For `K`, `N` normal with trivial intersection and `L`
/// normal in `KN` inside `KN`, every factor of `N` onto which `L` projects
/// nontrivially lies in `L`. Returns those factor indices (from 0).
pub fn check_ntproj(k: &PermGroup, n: &PermGroup, l: &PermGroup) -> Result<Vec<usize>> {
    for x in [n, l] {
        if x.degree() != k.degree() {
            return Err(Error::DegreeMismatch {
                expected: k.degree(),
                actual: x.degree(),
            });
        }
    }
    let kn = k.closure(n.generators())?;
    if !n.is_normal_in(&kn) || !k.is_normal_in(&kn) {
        return Err(Error::PreconditionFailed("K and N must normalize each other".into()));
    }
    if kn.order() != k.order() * n.order() {
        return Err(Error::PreconditionFailed("K and N intersect nontrivially".into()));
    }
    if !l.is_subgroup_of(&kn) {
        return Err(Error::PreconditionFailed("L is not contained in KN".into()));
    }
    if !l.is_normal_in(&kn) {
        return Err(Error::PreconditionFailed("L is not normalized by KN".into()));
    }
    let factors = simple_factors(n)?;
    let lgens = l.nontrivial_generators();
    let mut hit = Vec::new();
    for (i, s) in factors.iter().enumerate() {
        // K centralizes N, so L projects nontrivially onto S_i exactly when
        // it fails to commute with S_i.
        let sgens = s.nontrivial_generators();
        let projects = lgens
            .iter()
            .any(|x| sgens.iter().any(|y| x.mul(y) != y.mul(x)));
        if projects {
            if !s.is_subgroup_of(l) {
                return Err(Error::LemmaViolated(format!(
                    "L projects onto factor {} without containing it",
                    i + 1
                )));
            }
            hit.push(i);
        }
    }
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    fn a5a5() -> PermGroup {
        grp(10, &["(1 2 3 4 5)", "(3 4 5)", "(6 7 8 9 10)", "(8 9 10)"])
    }

    fn s5_wr_s2() -> PermGroup {
        grp(10, &["(1 2 3 4 5)", "(1 2)", "(1 6)(2 7)(3 8)(4 9)(5 10)"])
    }

    #[test]
    fn factors_of_a5_squared() {
        let f = simple_factors(&a5a5()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|s| s.order() == BigUint::from(60u32)));
        assert!(f[0].generators().iter().all(|x| x.moved_points().all(|y| y < 5)));
        assert!(f[1].generators().iter().all(|x| x.moved_points().all(|y| y >= 5)));
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let f = simple_factors(&a5).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].same_elements(&a5));
        assert!(matches!(simple_factors(&grp(2, &["(1 2)"])), Err(Error::NotSemisimple(_))));
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert!(matches!(simple_factors(&s5), Err(Error::NotSemisimple(_))));
    }

    #[test]
    fn minimal_normality() {
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        assert!(is_minimal_normal(&s5, &a5).unwrap());
        assert!(!is_minimal_normal(&a5a5(), &a5a5()).unwrap());
        assert!(is_minimal_normal(&s5_wr_s2(), &a5a5()).unwrap());
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        assert!(is_minimal_normal(&s4, &v4).unwrap());
        assert!(matches!(
            is_minimal_normal(&s5, &grp(5, &["(1 2)"])),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn projections_agree_with_support_splitting() {
        let g = s5_wr_s2();
        let n = a5a5();
        let dec = socle_decomposition(&g, &n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = n.random_element(&mut rng);
            let s = projection_onto_factor(&dec, &x, 0).unwrap();
            let t = projection_onto_factor(&dec, &x, 1).unwrap();
            let mut lo: Vec<usize> = (0..10).collect();
            let mut hi: Vec<usize> = (0..10).collect();
            for i in 0..5 {
                lo[i] = x.image(i);
                hi[i + 5] = x.image(i + 5);
            }
            assert_eq!(s, Perm::from_images0(lo).unwrap());
            assert_eq!(t, Perm::from_images0(hi).unwrap());
            assert_eq!(s.mul(&t), x);
        }
        let s1 = &dec.factors()[0];
        let y = s1.generators()[0].clone();
        assert_eq!(projection_onto_factor(&dec, &y, 0).unwrap(), y);
        assert!(projection_onto_factor(&dec, &y, 1).unwrap().is_identity());
        assert!(projection_onto_factor(&dec, &p("(1 2)", 10), 0).is_err());
    }

    #[test]
    fn subdirectness() {
        let g = s5_wr_s2();
        let n = a5a5();
        let dec = socle_decomposition(&g, &n).unwrap();
        let diag = grp(10, &["(1 2 3 4 5)(6 7 8 9 10)", "(3 4 5)(8 9 10)"]);
        assert!(is_subdirect(&dec, &diag).unwrap());
        assert!(!is_subdirect(&dec, &dec.factors()[0]).unwrap());
        assert!(is_subdirect(&dec, &n).unwrap());
        check_normsd(&dec, &diag).unwrap();
    }

    #[test]
    fn induced_almost_simple_groups() {
        let s5 = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let dec = socle_decomposition(&s5, &a5).unwrap();
        assert_eq!(induced_t(&s5, &dec).unwrap().order(), BigUint::from(120u32));
        assert_eq!(dec.outer_order(), BigUint::from(2u32));
        let dec = socle_decomposition(&a5, &a5).unwrap();
        assert_eq!(dec.t_rep().order(), BigUint::from(60u32));
        assert_eq!(dec.outer_order(), BigUint::from(1u32));
        let g = s5_wr_s2();
        let dec = socle_decomposition(&g, &a5a5()).unwrap();
        assert_eq!(dec.k(), 2);
        assert_eq!(dec.t_rep().order(), BigUint::from(120u32));
        assert!(dec.factor_action().image().is_transitive());
        assert!(dec.t_socle_image().is_normal_in(dec.t_rep()));
    }

    #[test]
    fn ntproj_examples() {
        let n = grp(12, &["(1 2 3 4 5)", "(3 4 5)", "(6 7 8 9 10)", "(8 9 10)"]);
        let k = grp(12, &["(11 12)"]);
        let s1 = grp(12, &["(1 2 3 4 5)", "(3 4 5)"]);
        let l = s1.closure(k.generators()).unwrap();
        assert_eq!(check_ntproj(&k, &n, &l).unwrap(), vec![0]);
        assert!(check_ntproj(&k, &n, &k).unwrap().is_empty());
        let triv = PermGroup::trivial(12);
        assert_eq!(check_ntproj(&triv, &n, &n).unwrap(), vec![0, 1]);
        let bad = grp(12, &["(1 2)"]);
        assert!(matches!(check_ntproj(&k, &n, &bad), Err(Error::PreconditionFailed(_))));
    }
}
