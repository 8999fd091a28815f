//! Stabilizer chains built by deterministic Schreier-Sims.
//!
//! Level `l` holds the strong generators that fix base points `0..l`, the
//! orbit of base point `l` under them, and a transversal: for every orbit
//! point `b` a representative `u_b` with `base^u_b = b`.

use num_bigint::BigUint;
use rand::Rng;

use crate::perm::Perm;

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Perm>,
    pub orbit: Vec<usize>,
    /// point -> index into `reps`, or ABSENT
    slot: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut lvl = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![ABSENT; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        lvl.recompute(degree);
        lvl
    }

    fn recompute(&mut self, degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = ABSENT);
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        let id = Perm::identity(degree);
        self.slot[self.base] = 0;
        self.orbit.push(self.base);
        self.inv_reps.push(id.clone());
        self.reps.push(id);
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for s in &self.gens {
                let c = s.image(b);
                if self.slot[c] == ABSENT {
                    let u = self.reps[i].mul(s);
                    self.slot[c] = self.reps.len() as u32;
                    self.orbit.push(c);
                    self.inv_reps.push(u.inverse());
                    self.reps.push(u);
                }
            }
            i += 1;
        }
    }

    /// Representative mapping the base point to `b`.
    #[inline]
    pub fn rep(&self, b: usize) -> Option<&Perm> {
        match self.slot[b] {
            ABSENT => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    #[inline]
    pub fn inv_rep(&self, b: usize) -> Option<&Perm> {
        match self.slot[b] {
            ABSENT => None,
            s => Some(&self.inv_reps[s as usize]),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
    /// rank[p] is the preference of p as a new base point (lower first)
    rank: Vec<usize>,
}

impl Chain {
    /// Chain for `<gens>` with base points chosen as the smallest moved point.
    pub fn new(degree: usize, gens: &[Perm]) -> Chain {
        Chain::with_base(degree, gens, &[], None)
    }

    /// Chain whose base starts with `prefix` (kept even when redundant until
    /// `prune` is called). New base points are the first moved point in
    /// `priority` order, ascending point order when `None`.
    pub fn with_base(
        degree: usize,
        gens: &[Perm],
        prefix: &[usize],
        priority: Option<&[usize]>,
    ) -> Chain {
        let rank = match priority {
            Some(order) => {
                let mut rank = vec![usize::MAX; degree];
                for (i, &p) in order.iter().enumerate() {
                    rank[p] = i;
                }
                let mut next = order.len();
                for r in rank.iter_mut().filter(|r| **r == usize::MAX) {
                    *r = next;
                    next += 1;
                }
                rank
            }
            None => (0..degree).collect(),
        };
        let mut chain = Chain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
            rank,
        };
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    fn first_moved(&self, g: &Perm) -> usize {
        g.moved_points()
            .min_by_key(|&p| self.rank[p])
            .expect("identity has no moved point")
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn strong_gens(&self) -> &[Perm] {
        self.levels.first().map(|l| &l.gens[..]).unwrap_or(&[])
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` when it went all the way).
    pub fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, lvl) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(lvl.base);
            match lvl.inv_rep(b) {
                Some(inv) => h = h.mul(inv),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, l) = self.strip(g, 0);
        l == self.levels.len() && h.is_identity()
    }

    pub fn add_generator(&mut self, g: &Perm) {
        if g.is_identity() || self.contains(g) {
            return;
        }
        let mut fixed = self
            .levels
            .iter()
            .take_while(|l| g.image(l.base) == l.base)
            .count();
        if fixed == self.levels.len() {
            let b = self.first_moved(g);
            self.levels.push(Level::new(b, self.degree));
            fixed = self.levels.len() - 1;
        }
        for l in 0..=fixed {
            self.levels[l].gens.push(g.clone());
            self.levels[l].recompute(self.degree);
        }
        self.schreier_sims(fixed);
    }

    fn schreier_sims(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_failing_schreier_gen(lvl) {
                None => i -= 1,
                Some((h, j)) => {
                    let j = if j == self.levels.len() {
                        let b = self.first_moved(&h);
                        self.levels.push(Level::new(b, self.degree));
                        self.levels.len() - 1
                    } else {
                        j
                    };
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].recompute(self.degree);
                    }
                    i = j as isize;
                }
            }
        }
    }

    fn find_failing_schreier_gen(&self, lvl: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lvl];
        for (idx, &b) in level.orbit.iter().enumerate() {
            let u = &level.reps[idx];
            for s in &level.gens {
                let c = s.image(b);
                let us = u.mul(s);
                let uc_inv = level.inv_rep(c).expect("orbit closed");
                let sg = us.mul(uc_inv);
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(&sg, lvl + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Drops levels whose orbit is trivial.
    pub fn prune(&mut self) {
        self.levels.retain(|l| l.orbit.len() > 1);
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for lvl in self.levels.iter().rev() {
            let b = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            g = g.mul(lvl.rep(b).unwrap());
        }
        g
    }

    /// Calls `f` on every element; stops early when `f` returns false.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm) -> bool) {
        fn rec(
            levels: &[Level],
            l: usize,
            acc: &Perm,
            f: &mut dyn FnMut(&Perm) -> bool,
        ) -> bool {
            if l == 0 {
                return f(acc);
            }
            let lvl = &levels[l - 1];
            for &b in &lvl.orbit {
                let next = acc.mul(lvl.rep(b).unwrap());
                if !rec(levels, l - 1, &next, f) {
                    return false;
                }
            }
            true
        }
        let id = Perm::identity(self.degree);
        rec(&self.levels, self.levels.len(), &id, &mut f);
    }
}
