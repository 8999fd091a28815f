//! Exact minimal degree of a faithful permutation representation of a small
//! group, by enumerating subgroups up to conjugacy and a branch-and-bound
//! search over families of them.
//!
//! A faithful action is a sum of transitive actions on cosets of subgroups
//! `H_1, ..., H_t` whose cores meet trivially; the degree is the sum of the
//! indices. Replacing `H_i` by a conjugate changes neither its index nor its
//! core, so one subgroup per conjugacy class suffices, and one class per
//! distinct core.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::{coset_action, GroupHom};
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: u64 = 20_000;
pub const ORDER_CAP_VAR: &str = "QUOTSHRINK_ORDER_CAP";
const TABLE_LIMIT: usize = 2048;

/// The order cap, from `QUOTSHRINK_ORDER_CAP` when set to a number.
pub fn order_cap() -> u64 {
    std::env::var(ORDER_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A small group with its elements numbered; element 0 is the identity.
struct Table {
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    mul: Option<Vec<u32>>,
    /// conjugation by each group generator, as a map on element numbers
    conj: Vec<Vec<u32>>,
}

impl Table {
    fn new(q: &PermGroup) -> Table {
        let mut elems = vec![Perm::identity(q.degree())];
        elems.extend(q.elements().into_iter().filter(|x| !x.is_identity()));
        let index: HashMap<Perm, u32> = elems.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
        let n = elems.len();
        let mul = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elems {
                for b in &elems {
                    t.push(index[&a.mul(b)]);
                }
            }
            t
        });
        let conj = q
            .nontrivial_generators()
            .iter()
            .map(|s| elems.iter().map(|x| index[&x.conj(s)]).collect())
            .collect();
        Table {
            elems,
            index,
            mul,
            conj,
        }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mul {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.index[&self.elems[a as usize].mul(&self.elems[b as usize])],
        }
    }

    fn empty(&self) -> Bits {
        vec![0; self.len().div_ceil(64)]
    }

    /// Subgroup generated by the given elements.
    fn closure(&self, gens: &[u32]) -> Bits {
        let mut bits = self.empty();
        set_bit(&mut bits, 0);
        let mut members = vec![0u32];
        let mut i = 0;
        while i < members.len() {
            for &s in gens {
                let y = self.mul(members[i], s);
                if !bit(&bits, y as usize) {
                    set_bit(&mut bits, y as usize);
                    members.push(y);
                }
            }
            i += 1;
        }
        bits
    }

    /// The powers of `x` that generate the same cyclic group.
    fn cyclic_generators(&self, x: u32) -> Vec<u32> {
        let mut powers = vec![x];
        let mut y = x;
        loop {
            y = self.mul(y, x);
            if y == 0 {
                break;
            }
            powers.push(y);
        }
        let order = powers.len() + 1;
        (1..order)
            .filter(|&k| gcd(k, order) == 1)
            .map(|k| powers[k - 1])
            .collect()
    }

    fn conjugate(&self, sub: &Bits, map: &[u32]) -> Bits {
        let mut out = self.empty();
        for (i, &j) in map.iter().enumerate() {
            if bit(sub, i) {
                set_bit(&mut out, j as usize);
            }
        }
        out
    }

    /// All conjugates of a subgroup.
    fn conjugates(&self, sub: &Bits) -> Vec<Bits> {
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(sub.clone());
        let mut out = vec![sub.clone()];
        let mut i = 0;
        while i < out.len() {
            for map in &self.conj {
                let c = self.conjugate(&out[i], map);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }
}

/// A conjugacy class of subgroups, with a representative.
struct SubgroupClass {
    gens: Vec<u32>,
    order: usize,
    core: Bits,
}

fn subgroup_classes(t: &Table) -> Vec<SubgroupClass> {
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut reps: Vec<(Bits, Vec<u32>)> = Vec::new();
    let mut classes = Vec::new();
    let mut add = |bits: Bits, gens: Vec<u32>, seen: &mut HashSet<Bits>, reps: &mut Vec<(Bits, Vec<u32>)>| {
        if seen.contains(&bits) {
            return;
        }
        let conjugates = t.conjugates(&bits);
        let core = conjugates.iter().skip(1).fold(bits.clone(), |acc, c| and(&acc, c));
        seen.extend(conjugates);
        classes.push(SubgroupClass {
            gens: gens.clone(),
            order: count(&bits),
            core,
        });
        reps.push((bits, gens));
    };
    add(t.closure(&[]), Vec::new(), &mut seen, &mut reps);
    // Every subgroup is reached from the trivial one by adding one element
    // at a time; extending each class representative by every element
    // therefore meets every class.
    let mut i = 0;
    while i < reps.len() {
        let (bits, gens) = reps[i].clone();
        let members: Vec<u32> = (0..t.len() as u32).filter(|&x| bit(&bits, x as usize)).collect();
        // <H, x> only depends on the coset Hx and on <x>, so each coset of
        // H and each generator of a cyclic group is tried once
        let mut done = bits.clone();
        for x in 1..t.len() as u32 {
            if bit(&done, x as usize) {
                continue;
            }
            let powers = t.cyclic_generators(x);
            for &y in &powers {
                for &h in &members {
                    set_bit(&mut done, t.mul(h, y) as usize);
                }
            }
            let mut g2 = gens.clone();
            g2.push(x);
            let joined = t.closure(&g2);
            add(joined, g2, &mut seen, &mut reps);
        }
        i += 1;
    }
    classes
}

fn check_cap(q: &PermGroup, cap: u64) -> Result<()> {
    let order = q.order();
    if order > BigUint::from(cap) {
        return Err(Error::OrderCapExceeded {
            order: order.to_string(),
            cap,
        });
    }
    Ok(())
}

fn subgroup_of(t: &Table, q: &PermGroup, gens: &[u32]) -> PermGroup {
    let gens = gens.iter().map(|&i| t.elems[i as usize].clone()).collect();
    PermGroup::new(q.degree(), gens).expect("elements of q")
}

/// One subgroup from each conjugacy class of subgroups of `q`, largest
/// first, including the trivial subgroup and `q`.
pub fn enumerate_subgroups(q: &PermGroup, order_cap: u64) -> Result<Vec<PermGroup>> {
    check_cap(q, order_cap)?;
    let t = Table::new(q);
    let mut classes = subgroup_classes(&t);
    classes.sort_by(|a, b| b.order.cmp(&a.order));
    Ok(classes.iter().map(|c| subgroup_of(&t, q, &c.gens)).collect())
}

/// Minimal faithful degree with a witnessing action.
#[derive(Clone, Debug)]
pub struct MinDegResult {
    pub degree: usize,
    pub witness: GroupHom,
    pub subgroup_family: Vec<PermGroup>,
}

/// `P(q)` under the cap from [`order_cap`].
pub fn min_faithful_rep(q: &PermGroup) -> Result<MinDegResult> {
    min_faithful_rep_with_cap(q, order_cap())
}

pub fn min_faithful_rep_with_cap(q: &PermGroup, cap: u64) -> Result<MinDegResult> {
    check_cap(q, cap)?;
    if q.is_trivial() {
        let witness = GroupHom::new(q.clone(), 1, vec![Perm::identity(1); q.generators().len()])?;
        return Ok(MinDegResult {
            degree: 1,
            witness,
            subgroup_family: vec![q.clone()],
        });
    }
    let t = Table::new(q);
    let n = t.len();
    let mut classes = subgroup_classes(&t);
    classes.sort_by(|a, b| b.order.cmp(&a.order));
    // one candidate per distinct core, the one of smallest index
    let mut cores: HashSet<Bits> = HashSet::new();
    let candidates: Vec<(usize, &SubgroupClass)> = classes
        .iter()
        .filter(|c| c.order < n && cores.insert(c.core.clone()))
        .map(|c| (n / c.order, c))
        .collect();

    struct Search<'a> {
        candidates: &'a [(usize, &'a SubgroupClass)],
        best: usize,
        best_family: Vec<usize>,
        family: Vec<usize>,
    }
    fn dfs(s: &mut Search<'_>, start: usize, core: &Bits, sum: usize) {
        if count(core) == 1 {
            if sum < s.best {
                s.best = sum;
                s.best_family = s.family.clone();
            }
            return;
        }
        for i in start..s.candidates.len() {
            let (index, class) = s.candidates[i];
            if sum + index >= s.best {
                break;
            }
            let next = and(core, &class.core);
            if next == *core {
                continue;
            }
            s.family.push(i);
            dfs(s, i + 1, &next, sum + index);
            s.family.pop();
        }
    }
    let mut full = t.empty();
    for i in 0..n {
        set_bit(&mut full, i);
    }
    let mut search = Search {
        candidates: &candidates,
        best: usize::MAX,
        best_family: Vec::new(),
        family: Vec::new(),
    };
    dfs(&mut search, 0, &full, 0);
    if search.best == usize::MAX {
        return Err(Error::SearchExhausted("no faithful family found".into()));
    }
    let family: Vec<PermGroup> = search
        .best_family
        .iter()
        .map(|&i| subgroup_of(&t, q, &candidates[i].1.gens))
        .collect();
    let parts = family
        .iter()
        .map(|h| coset_action(q, h))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GroupHom> = parts.iter().collect();
    let witness = GroupHom::direct_sum(q, &refs)?;
    if !witness.is_injective() || witness.codomain_degree() != search.best {
        return Err(Error::SearchExhausted("witness does not match the optimum".into()));
    }
    Ok(MinDegResult {
        degree: search.best,
        witness,
        subgroup_family: family,
    })
}

/// `P(q)` as a number.
pub fn min_degree(q: &PermGroup) -> Result<usize> {
    Ok(min_faithful_rep(q)?.degree)
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
    fn subgroup_class_counts() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(enumerate_subgroups(&s3, 100).unwrap().len(), 4);
        assert_eq!(enumerate_subgroups(&PermGroup::trivial(2), 100).unwrap().len(), 1);
        let v4 = grp(4, &["(1 2)", "(3 4)"]);
        assert_eq!(enumerate_subgroups(&v4, 100).unwrap().len(), 5);
        // S4 has 11 classes of subgroups, A5 has 9
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(enumerate_subgroups(&s4, 100).unwrap().len(), 11);
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        assert_eq!(enumerate_subgroups(&a5, 100).unwrap().len(), 9);
        assert!(matches!(
            enumerate_subgroups(&a5, 10),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn spot_values() {
        assert_eq!(min_degree(&PermGroup::trivial(3)).unwrap(), 1);
        assert_eq!(min_degree(&grp(2, &["(1 2)"])).unwrap(), 2);
        assert_eq!(min_degree(&grp(4, &["(1 2)", "(3 4)"])).unwrap(), 4);
        assert_eq!(min_degree(&grp(4, &["(1 2 3 4)", "(1 3)"])).unwrap(), 4);
        assert_eq!(min_degree(&grp(6, &["(1 2 3 4 5 6)"])).unwrap(), 5);
        assert_eq!(min_degree(&grp(5, &["(1 2 3 4 5)", "(3 4 5)"])).unwrap(), 5);
        assert_eq!(min_degree(&grp(5, &["(1 2 3 4 5)", "(1 2)"])).unwrap(), 5);
    }

    #[test]
    fn witness_is_faithful_and_sums_indices() {
        let q = grp(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        let r = min_faithful_rep_with_cap(&q, 1000).unwrap();
        assert_eq!(r.degree, 6);
        assert!(r.witness.is_injective());
        let total: BigUint = r.subgroup_family.iter().map(|h| q.index_of(h)).sum();
        assert_eq!(total, BigUint::from(r.degree));
    }
}
