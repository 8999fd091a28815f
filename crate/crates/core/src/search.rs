//! Backtrack search for subgroups defined by a property.
//!
//! The result `R` is built bottom-up along a stabilizer chain of the
//! ambient group: at level `l` every point of the level orbit is either
//! reached by the part of `R` found so far, or a witness in `R` mapping the
//! base point to it is searched for. A failed search rules out the whole
//! orbit of that point under what is already known.

use std::collections::HashSet;

use crate::chain::Chain;
use crate::group::{orbit_of, PermGroup};
use crate::perm::Perm;

pub(crate) struct SearchProblem<'a> {
    /// Full membership test for the subgroup being computed.
    pub accept: &'a dyn Fn(&Perm) -> bool,
    /// Partial test on `(base point, image)` pairs, in base order. Returning
    /// false prunes every element extending those images.
    pub prune: &'a dyn Fn(&[(usize, usize)]) -> bool,
    /// Elements already known to lie in the result.
    pub known: Vec<Perm>,
    /// Preferred base point order.
    pub priority: Vec<usize>,
}

pub(crate) fn subgroup_search(g: &PermGroup, problem: &SearchProblem<'_>) -> PermGroup {
    let degree = g.degree();
    let mut chain = Chain::with_base(degree, g.strong_generators(), &[], Some(&problem.priority));
    chain.prune();
    let base = chain.base();
    let mut found: Vec<Perm> = problem.known.iter().filter(|x| !x.is_identity()).cloned().collect();

    for l in (0..chain.levels.len()).rev() {
        let fixing = |x: &Perm| base[..l].iter().all(|&b| x.image(b) == b);
        let mut level_gens: Vec<Perm> = found.iter().filter(|x| fixing(x)).cloned().collect();
        let mut reached: HashSet<usize> = orbit_of(&level_gens, degree, base[l]).into_iter().collect();
        let mut rejected: HashSet<usize> = HashSet::new();
        let mut targets = chain.levels[l].orbit.clone();
        targets.sort_unstable();
        for gamma in targets {
            if reached.contains(&gamma) || rejected.contains(&gamma) {
                continue;
            }
            match search_coset(&chain, l, gamma, problem) {
                Some(x) => {
                    level_gens.push(x.clone());
                    found.push(x);
                    reached = orbit_of(&level_gens, degree, base[l]).into_iter().collect();
                }
                None => {
                    rejected.extend(orbit_of(&level_gens, degree, gamma));
                }
            }
        }
    }
    PermGroup::new(degree, found).expect("degrees agree")
}

/// Depth-first search for an accepted element of `G^(l)` mapping base point
/// `l` to `gamma`.
fn search_coset(chain: &Chain, l: usize, gamma: usize, problem: &SearchProblem<'_>) -> Option<Perm> {
    let base = chain.base();
    let mut pairs: Vec<(usize, usize)> = base[..l].iter().map(|&b| (b, b)).collect();
    pairs.push((base[l], gamma));
    if !(problem.prune)(&pairs) {
        return None;
    }
    let w = chain.levels[l].rep(gamma).expect("gamma in orbit").clone();
    dfs(chain, l + 1, &w, &mut pairs, problem)
}

fn dfs(
    chain: &Chain,
    m: usize,
    w: &Perm,
    pairs: &mut Vec<(usize, usize)>,
    problem: &SearchProblem<'_>,
) -> Option<Perm> {
    if m == chain.levels.len() {
        return if (problem.accept)(w) { Some(w.clone()) } else { None };
    }
    let lvl = &chain.levels[m];
    // images of base point m over the coset, visited in ascending order
    let mut options: Vec<(usize, usize)> = lvl.orbit.iter().map(|&d| (w.image(d), d)).collect();
    options.sort_unstable();
    for (img, d) in options {
        pairs.push((lvl.base, img));
        if (problem.prune)(pairs) {
            let next = lvl.rep(d).unwrap().mul(w);
            if let Some(x) = dfs(chain, m + 1, &next, pairs, problem) {
                pairs.pop();
                return Some(x);
            }
        }
        pairs.pop();
    }
    None
}
