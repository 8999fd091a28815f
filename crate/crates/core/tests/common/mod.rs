//! Brute-force reference computations for the integration tests. They only
//! use permutation products, never the library's group machinery.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use quotshrink::{Perm, PermGroup};

pub fn p(s: &str, n: usize) -> Perm {
    Perm::parse_cycles(s, n).unwrap()
}

pub fn grp(n: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|s| p(s, n)).collect()).unwrap()
}

/// All elements, by closing the generators under products.
pub fn elements(g: &PermGroup) -> Vec<Perm> {
    let id = Perm::identity(g.degree());
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

pub struct Table {
    pub elems: Vec<Perm>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl Table {
    pub fn new(g: &PermGroup) -> Table {
        let elems = elements(g);
        assert!(elems.len() <= 128, "oracle only handles orders up to 128");
        let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mul = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let inv = elems.iter().map(|a| index[&a.inverse()]).collect();
        Table { elems, mul, inv }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    fn identity(&self) -> usize {
        self.elems.iter().position(|x| x.is_identity()).unwrap()
    }

    /// Subgroup generated by the elements of a mask.
    pub fn closure(&self, mask: u128) -> u128 {
        let gens: Vec<usize> = (0..self.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let e = self.identity();
        let mut out = 1u128 << e;
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul[x][s];
                if out >> y & 1 == 0 {
                    out |= 1 << y;
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Every subgroup, as element masks.
    pub fn all_subgroups(&self) -> Vec<u128> {
        let trivial = 1u128 << self.identity();
        let mut seen = HashSet::from([trivial]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for x in 0..self.len() {
                if h >> x & 1 == 0 {
                    let k = self.closure(h | 1 << x);
                    if seen.insert(k) {
                        queue.push_back(k);
                    }
                }
            }
        }
        let mut out: Vec<u128> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn conjugate(&self, h: u128, g: usize) -> u128 {
        (0..self.len())
            .filter(|&i| h >> i & 1 == 1)
            .fold(0u128, |acc, i| acc | 1 << self.mul[self.mul[self.inv[g]][i]][g])
    }

    pub fn core(&self, h: u128) -> u128 {
        (0..self.len()).fold(h, |acc, g| acc & self.conjugate(h, g))
    }

    /// Number of conjugacy classes of subgroups.
    pub fn subgroup_class_count(&self) -> usize {
        let subs = self.all_subgroups();
        let mut done: HashSet<u128> = HashSet::new();
        let mut classes = 0;
        for h in subs {
            if done.contains(&h) {
                continue;
            }
            classes += 1;
            for g in 0..self.len() {
                done.insert(self.conjugate(h, g));
            }
        }
        classes
    }
}

/// Minimal faithful degree: cheapest family of subgroups whose cores
/// intersect trivially, searched over every subgroup with a shortest-path
/// over intersections of cores.
pub fn exhaustive_min_degree(g: &PermGroup) -> usize {
    let t = Table::new(g);
    let n = t.len();
    if n == 1 {
        return 1;
    }
    let trivial = 1u128 << t.identity();
    let moves: Vec<(u128, usize)> = t
        .all_subgroups()
        .into_iter()
        .map(|h| (t.core(h), n / h.count_ones() as usize))
        .collect();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut dist: HashMap<u128, usize> = HashMap::from([(full, 0)]);
    let mut frontier: BTreeMap<usize, Vec<u128>> = BTreeMap::from([(0, vec![full])]);
    while let Some((d, states)) = frontier.pop_first() {
        for s in states {
            if dist[&s] < d {
                continue;
            }
            if s == trivial {
                return d;
            }
            for &(core, cost) in &moves {
                let next = s & core;
                let nd = d + cost;
                if next != s && dist.get(&next).is_none_or(|&old| nd < old) {
                    dist.insert(next, nd);
                    frontier.entry(nd).or_default().push(next);
                }
            }
        }
    }
    unreachable!("the trivial subgroup always has trivial core")
}

/// `N_X(H)` by testing every element of `X`.
pub fn brute_normalizer(x: &PermGroup, h: &PermGroup) -> Vec<Perm> {
    let hs: HashSet<Perm> = elements(h).into_iter().collect();
    elements(x)
        .into_iter()
        .filter(|g| h.generators().iter().all(|s| hs.contains(&s.conj(g))))
        .collect()
}
