//! Faithful permutation representations of `G/N` of small degree.
//!
//! For a nonabelian minimal normal subgroup `N` of `G <= Sym(n)` the
//! construction recurses on the shape of the action:
//!
//! * `G` intransitive: reduce on the largest orbit where `N` is nontrivial,
//!   and on the rest (recursively if `N` still acts there, by restriction
//!   otherwise), then add the two actions side by side.
//! * `G` transitive, `N` intransitive: the `N`-orbits form blocks; reduce
//!   the block stabilizer on its block and induce up to all blocks.
//! * `N` transitive: take `G/N` through its regular action and minimize
//!   its degree exactly; when `C_G(N) = 1`, also try the map into
//!   `(T/S) wr Sym(k)` and keep the smaller result.
//!
//! Every level checks that its kernel is exactly `N` and that the degree
//! meets the bound (`5m <= 2n` for transitive groups, `m < n` otherwise).

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::blocks::{block_action, block_stabilizer, orbits_block_system};
use crate::error::{Error, Result};
use crate::group::{centralizer, PermGroup};
use crate::hom::{coset_action, GroupHom};
use crate::mindeg::{min_degree, min_faithful_rep};
use crate::normal::{is_minimal_normal, minimal_normal_inside, socle_decomposition, SocleDecomposition};
use crate::perm::Perm;
use crate::wreath::{block_transversal, induced_on_blocks};

/// One step of the construction.
///
/// Steps at depth 0 are the stages of the final map: each carries the
/// images of the previous stage's generators, so composing them replays
/// the whole map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub depth: usize,
    pub branch: String,
    pub degree_in: usize,
    pub degree_out: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub kernel_order: BigUint,
    pub equals_n: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub transitive: bool,
    /// Largest degree allowed: `floor(2n/5)` or `n - 1`.
    pub max_degree: usize,
    pub satisfied: bool,
}

/// The result of a reduction: `rho: G -> Sym(m)` with kernel `N`.
#[derive(Clone, Debug)]
pub struct QuotientRep {
    pub rho: GroupHom,
    pub m: usize,
    pub n: usize,
    pub kernel_certificate: KernelCertificate,
    pub bound_certificate: BoundCertificate,
    pub trace: Vec<TraceStep>,
}

/// Largest degree allowed for a group of degree `n`.
pub fn degree_bound(n: usize, transitive: bool) -> usize {
    if transitive {
        2 * n / 5
    } else {
        n.saturating_sub(1)
    }
}

fn check_level(g: &PermGroup, n: &PermGroup, rho: &GroupHom) -> Result<()> {
    if !rho.kernel().same_elements(n) {
        return Err(Error::LemmaViolated(format!(
            "kernel has order {}, expected {}",
            rho.kernel().order(),
            n.order()
        )));
    }
    let transitive = g.is_transitive();
    let m = rho.codomain_degree();
    if m > degree_bound(g.degree(), transitive) {
        return Err(Error::BoundViolation {
            m,
            n: g.degree(),
            transitive,
        });
    }
    Ok(())
}

struct Builder {
    trace: Vec<TraceStep>,
}

impl Builder {
    fn open(&mut self, depth: usize, branch: &str, degree_in: usize) -> usize {
        self.trace.push(TraceStep {
            depth,
            branch: branch.to_string(),
            degree_in,
            degree_out: 0,
            images: None,
        });
        self.trace.len() - 1
    }

    /// `rho` for `N` minimal normal and nonabelian in `G`.
    fn minimal(&mut self, g: &PermGroup, n: &PermGroup, depth: usize) -> Result<GroupHom> {
        let branch = if !g.is_transitive() {
            "intransitive"
        } else if !n.is_transitive() {
            "blocks"
        } else {
            "quotient"
        };
        let step = self.open(depth, branch, g.degree());
        let rho = match branch {
            "intransitive" => self.intransitive(g, n, depth)?,
            "blocks" => self.blocks(g, n, depth)?,
            _ => {
                let (rho, route) = self.transitive_n(g, n)?;
                self.trace[step].branch = route.to_string();
                rho
            }
        };
        check_level(g, n, &rho)?;
        self.trace[step].degree_out = rho.codomain_degree();
        Ok(rho)
    }

    fn intransitive(&mut self, g: &PermGroup, n: &PermGroup, depth: usize) -> Result<GroupHom> {
        let orbits: Vec<Vec<usize>> = g.orbits0().into_iter().filter(|o| o.len() > 1).collect();
        let moves = |o: &[usize]| n.generators().iter().any(|x| o.iter().any(|&p| x.image(p) != p));
        let mut delta: Option<&Vec<usize>> = None;
        for o in orbits.iter().filter(|o| moves(o)) {
            if delta.is_none_or(|d| o.len() > d.len()) {
                delta = Some(o);
            }
        }
        let delta = delta.ok_or_else(|| Error::PreconditionFailed("N acts trivially".into()))?;
        let mut gamma: Vec<usize> = orbits.iter().filter(|o| o[0] != delta[0]).flatten().copied().collect();
        gamma.sort_unstable();

        let mut parts: Vec<Vec<Perm>> = Vec::new();
        let gd = g.restricted0(&delta)?;
        let nd = n.restricted0(&delta)?;
        parts.push(self.minimal(&gd, &nd, depth + 1)?.gen_images().to_vec());
        if !gamma.is_empty() {
            let gg = g.restricted0(&gamma)?;
            let ng = n.restricted0(&gamma)?;
            if ng.is_trivial() {
                parts.push(gg.generators().to_vec());
            } else {
                parts.push(self.minimal(&gg, &ng, depth + 1)?.gen_images().to_vec());
            }
        }
        parts.retain(|p| p.iter().any(|x| !x.is_identity()));
        side_by_side(g, &parts)
    }

    fn blocks(&mut self, g: &PermGroup, n: &PermGroup, depth: usize) -> Result<GroupHom> {
        let sys = orbits_block_system(g, n)?;
        let action = block_action(g, &sys)?;
        let transversal = block_transversal(g, &action)?;
        let stab = block_stabilizer(&action, 0)?;
        let delta = &sys.blocks0()[0];
        let gd = stab.restricted0(&delta)?;
        let nd = n.restricted0(&delta)?;
        let inner = self.radical(&gd, &nd, depth + 1)?;
        let inner = GroupHom::new(stab, inner.codomain_degree(), inner.gen_images().to_vec())?;
        induced_on_blocks(g, &action, &transversal, &inner)
    }

    fn transitive_n(&mut self, g: &PermGroup, n: &PermGroup) -> Result<(GroupHom, &'static str)> {
        let coset = coset_action(g, n)?;
        let q = coset.image();
        if q.is_trivial() {
            return Ok((trivial_map(g)?, "trivial-quotient"));
        }
        let exact = min_faithful_rep(q)
            .and_then(|r| GroupHom::new(g.clone(), r.degree, r.witness.gen_images().to_vec()));
        let wreath = if centralizer(g, n)?.is_trivial() {
            let dec = socle_decomposition(g, n)?;
            wreath_route(g, &dec)?
        } else {
            None
        };
        match (exact, wreath) {
            (Ok(a), Some(b)) if b.codomain_degree() < a.codomain_degree() => Ok((b, "quotient-wreath")),
            (Ok(a), _) => Ok((a, "quotient-mindeg")),
            (Err(Error::OrderCapExceeded { .. }), Some(b)) => Ok((b, "quotient-wreath")),
            (Err(e), _) => Err(e),
        }
    }

    /// `rho` for `N` normal with only nonabelian composition factors, by
    /// peeling off minimal normal subgroups one at a time.
    fn radical(&mut self, g: &PermGroup, n: &PermGroup, depth: usize) -> Result<GroupHom> {
        let mut cur_g = g.clone();
        let mut cur_n = n.clone();
        let mut images = g.generators().to_vec();
        let mut degree = g.degree();
        while !cur_n.is_trivial() {
            let m = minimal_normal_inside(&cur_g, &cur_n)?;
            if m.is_abelian() {
                return Err(Error::AbelianFactor);
            }
            let first = self.trace.len();
            let step = self.minimal(&cur_g, &m, depth)?;
            if depth == 0 {
                self.trace[first].images = Some(step.gen_images().iter().map(|x| x.format_cycles()).collect());
            }
            let n_images = cur_n
                .generators()
                .iter()
                .map(|x| step.apply(x))
                .collect::<Result<Vec<_>>>()?;
            cur_n = PermGroup::new(step.codomain_degree(), n_images)?;
            cur_g = step.image().clone();
            images = step.gen_images().to_vec();
            degree = step.codomain_degree();
        }
        GroupHom::new(g.clone(), degree, images)
    }
}

fn trivial_map(g: &PermGroup) -> Result<GroupHom> {
    GroupHom::new(g.clone(), 1, vec![Perm::identity(1); g.generators().len()])
}

/// Sum of generator-aligned image lists; degree 1 when there are none.
fn side_by_side(g: &PermGroup, parts: &[Vec<Perm>]) -> Result<GroupHom> {
    if parts.is_empty() {
        return trivial_map(g);
    }
    let degree = parts.iter().map(|p| p[0].degree()).sum();
    let images = (0..g.generators().len())
        .map(|i| {
            let pieces: Vec<&Perm> = parts.iter().map(|p| &p[i]).collect();
            Perm::direct_sum(&pieces)
        })
        .collect();
    GroupHom::new(g.clone(), degree, images)
}

/// The map `G -> (T/S) wr Sym(k)` on `k |T/S|` points, kept only when its
/// kernel is exactly `N`.
fn wreath_route(g: &PermGroup, dec: &SocleDecomposition) -> Result<Option<GroupHom>> {
    let sigma = coset_action(dec.t_rep(), dec.t_socle_image())?;
    let inner = GroupHom::new(
        dec.factor_normalizer().clone(),
        sigma.codomain_degree(),
        sigma.gen_images().to_vec(),
    )?;
    let transversal = block_transversal(g, dec.factor_action())?;
    let rho = induced_on_blocks(g, dec.factor_action(), &transversal, &inner)?;
    Ok(rho.kernel().same_elements(dec.normal_subgroup()).then_some(rho))
}

fn check_input(g: &PermGroup, n: &PermGroup) -> Result<()> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: n.degree(),
        });
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("N is not a normal subgroup of G".into()));
    }
    if n.is_trivial() {
        return Err(Error::PreconditionFailed("N must be nontrivial".into()));
    }
    Ok(())
}

fn finish(g: &PermGroup, n: &PermGroup, rho: GroupHom, trace: Vec<TraceStep>) -> Result<QuotientRep> {
    let equals_n = rho.kernel().same_elements(n);
    if !equals_n {
        return Err(Error::LemmaViolated(format!(
            "kernel has order {}, expected {}",
            rho.kernel().order(),
            n.order()
        )));
    }
    let transitive = g.is_transitive();
    let m = rho.codomain_degree();
    let max_degree = degree_bound(g.degree(), transitive);
    if m > max_degree {
        return Err(Error::BoundViolation {
            m,
            n: g.degree(),
            transitive,
        });
    }
    Ok(QuotientRep {
        kernel_certificate: KernelCertificate {
            kernel_order: rho.kernel().order(),
            equals_n,
        },
        bound_certificate: BoundCertificate {
            transitive,
            max_degree,
            satisfied: true,
        },
        m,
        n: g.degree(),
        rho,
        trace,
    })
}

/// A faithful representation of `G/N` for a nonabelian minimal normal
/// subgroup `N`.
pub fn embed_quotient(g: &PermGroup, n: &PermGroup) -> Result<QuotientRep> {
    check_input(g, n)?;
    if n.is_abelian() {
        return Err(Error::AbelianFactor);
    }
    if !is_minimal_normal(g, n)? {
        return Err(Error::NotMinimalNormal);
    }
    let mut b = Builder { trace: Vec::new() };
    let rho = b.minimal(g, n, 0)?;
    b.trace[0].images = Some(rho.gen_images().iter().map(|x| x.format_cycles()).collect());
    finish(g, n, rho, b.trace)
}

/// A faithful representation of `G/N` for a normal subgroup `N` all of
/// whose composition factors are nonabelian.
pub fn embed_quotient_radical(g: &PermGroup, n: &PermGroup) -> Result<QuotientRep> {
    check_input(g, n)?;
    let mut b = Builder { trace: Vec::new() };
    let rho = b.radical(g, n, 0)?;
    finish(g, n, rho, b.trace)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPrimDegReport {
    pub n: usize,
    pub k: usize,
    pub p_t: usize,
    pub p_t_pow_k: BigUint,
}

/// Checks `n >= P(T)^k` for a transitive `N = S^k` with `C_G(N) = 1`.
pub fn check_minprimdeg(g: &PermGroup, n: &PermGroup) -> Result<MinPrimDegReport> {
    check_input(g, n)?;
    if !n.is_transitive() {
        return Err(Error::PreconditionFailed("N is not transitive".into()));
    }
    if !centralizer(g, n)?.is_trivial() {
        return Err(Error::PreconditionFailed("C_G(N) is not trivial".into()));
    }
    let dec = socle_decomposition(g, n)?;
    let p_t = min_degree(dec.t_rep())?;
    let k = dec.k();
    let rhs = BigUint::from(p_t).pow(k as u32);
    if BigUint::from(g.degree()) < rhs {
        return Err(Error::LemmaViolated(format!("{} < P(T)^k = {rhs}", g.degree())));
    }
    Ok(MinPrimDegReport {
        n: g.degree(),
        k,
        p_t,
        p_t_pow_k: rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinWpQuotReport {
    pub p_quotient: usize,
    pub k: usize,
    pub outer_order: BigUint,
    pub p_t: usize,
}

impl MinWpQuotReport {
    /// `k |T/S|`.
    pub fn middle(&self) -> BigUint {
        BigUint::from(self.k) * &self.outer_order
    }
}

/// Checks `P(G/N) <= k|T/S| <= 2kP(T)/5` when `C_G(N) = 1`.
pub fn check_minwpquot(g: &PermGroup, n: &PermGroup, dec: &SocleDecomposition) -> Result<MinWpQuotReport> {
    check_input(g, n)?;
    if !dec.normal_subgroup().same_elements(n) || !dec.group().same_elements(g) {
        return Err(Error::PreconditionFailed("decomposition is for another pair".into()));
    }
    if !centralizer(g, n)?.is_trivial() {
        return Err(Error::PreconditionFailed("C_G(N) is not trivial".into()));
    }
    let q = coset_action(g, n)?.image().clone();
    let report = MinWpQuotReport {
        p_quotient: min_degree(&q)?,
        k: dec.k(),
        outer_order: dec.outer_order(),
        p_t: min_degree(dec.t_rep())?,
    };
    let middle = report.middle();
    if BigUint::from(report.p_quotient) > middle {
        return Err(Error::LemmaViolated(format!("P(G/N) = {} > k|T/S| = {middle}", report.p_quotient)));
    }
    if BigUint::from(5u32) * &middle > BigUint::from(2 * report.k * report.p_t) {
        return Err(Error::LemmaViolated(format!(
            "k|T/S| = {middle} > 2kP(T)/5 with P(T) = {}",
            report.p_t
        )));
    }
    Ok(report)
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

    #[test]
    fn s5_mod_a5() {
        let g = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        let n = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let r = embed_quotient(&g, &n).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.rho.image().order(), BigUint::from(2u32));
        assert!(r.kernel_certificate.equals_n);
        let r = embed_quotient(&n, &n).unwrap();
        assert_eq!(r.m, 1);
    }

    #[test]
    fn imprimitive_wreath() {
        let g = grp(10, &["(1 2 3 4 5)", "(1 2)", "(1 6)(2 7)(3 8)(4 9)(5 10)"]);
        let n = grp(10, &["(1 2 3 4 5)", "(3 4 5)", "(6 7 8 9 10)", "(8 9 10)"]);
        let r = embed_quotient(&g, &n).unwrap();
        assert_eq!(r.m, 4);
        assert_eq!(r.trace[0].branch, "blocks");
    }

    #[test]
    fn radical_examples() {
        let n = grp(10, &["(1 2 3 4 5)", "(3 4 5)", "(6 7 8 9 10)", "(8 9 10)"]);
        let r = embed_quotient_radical(&n, &n).unwrap();
        assert_eq!(r.m, 1);
        let g = grp(10, &["(1 2 3 4 5)", "(1 2)", "(6 7 8 9 10)", "(6 7)"]);
        let r = embed_quotient_radical(&g, &n).unwrap();
        assert!(r.m <= 4);
        assert_eq!(r.rho.image().order(), BigUint::from(4u32));
        assert!(matches!(embed_quotient(&g, &n), Err(Error::NotMinimalNormal)));
    }

    #[test]
    fn precondition_errors() {
        let g = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert!(matches!(embed_quotient(&g, &grp(5, &["(1 2)"])), Err(Error::NotNormal(_))));
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(matches!(embed_quotient(&s4, &v4), Err(Error::AbelianFactor)));
        assert!(matches!(embed_quotient_radical(&s4, &v4), Err(Error::AbelianFactor)));
    }

    #[test]
    fn degree_inequalities_on_s5() {
        let g = grp(5, &["(1 2 3 4 5)", "(1 2)"]);
        let n = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let r = check_minprimdeg(&g, &n).unwrap();
        assert_eq!((r.p_t, r.k), (5, 1));
        let dec = socle_decomposition(&g, &n).unwrap();
        let w = check_minwpquot(&g, &n, &dec).unwrap();
        assert_eq!(w.p_quotient, 2);
        assert_eq!(w.middle(), BigUint::from(2u32));
    }
}
