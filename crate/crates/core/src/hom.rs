//! Homomorphisms from permutation groups into symmetric groups, defined by
//! generator images.
//!
//! A map `g_i -> h_i` is handled through its graph: the group generated by
//! the pairs `(g_i, h_i)` acting on the disjoint union of both domains.
//! The map is well defined exactly when that graph group has the same order
//! as the domain. With codomain points first in the base, the stabilizer of
//! every codomain point is the kernel; with domain points first, sifting a
//! pair `(x, 1)` leaves `(1, phi(x)^-1)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

#[derive(Clone)]
pub struct GroupHom {
    domain: PermGroup,
    codomain_degree: usize,
    gen_images: Vec<Perm>,
    image: PermGroup,
    kernel: PermGroup,
    /// Graph chain with codomain points first; the first `lift_levels`
    /// levels have codomain base points.
    graph_codomain_first: Chain,
    lift_levels: usize,
    graph_domain_first: OnceLock<Chain>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHom")
            .field("domain_degree", &self.domain.degree())
            .field("codomain_degree", &self.codomain_degree)
            .field("gen_images", &self.gen_images)
            .field("kernel_order", &self.kernel.order())
            .finish()
    }
}

fn pair(x: &Perm, y: &Perm) -> Perm {
    Perm::direct_sum(&[x, y])
}

fn split(z: &Perm, n: usize) -> (Perm, Perm) {
    let m = z.degree() - n;
    let left = (0..n).map(|i| z.image(i) as u32).collect();
    let right = (n..n + m).map(|i| (z.image(i) - n) as u32).collect();
    (
        Perm::from_images_unchecked(left),
        Perm::from_images_unchecked(right),
    )
}

impl GroupHom {
    pub fn new(domain: PermGroup, codomain_degree: usize, gen_images: Vec<Perm>) -> Result<GroupHom> {
        if gen_images.len() != domain.generators().len() {
            return Err(Error::Input(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                domain.generators().len()
            )));
        }
        if codomain_degree == 0 {
            return Err(Error::Input("codomain degree must be positive".into()));
        }
        if let Some(h) = gen_images.iter().find(|h| h.degree() != codomain_degree) {
            return Err(Error::DegreeMismatch {
                expected: codomain_degree,
                actual: h.degree(),
            });
        }
        let n = domain.degree();
        let m = codomain_degree;
        let graph_gens: Vec<Perm> = domain
            .generators()
            .iter()
            .zip(&gen_images)
            .map(|(g, h)| pair(g, h))
            .collect();
        let codomain_points: Vec<usize> = (n..n + m).collect();
        let mut priority = codomain_points.clone();
        priority.extend(0..n);
        let mut graph = Chain::with_base(n + m, &graph_gens, &codomain_points, Some(&priority));
        graph.prune();
        if graph.order() != domain.order() {
            return Err(Error::NotAHomomorphism);
        }
        let lift_levels = graph.levels.iter().take_while(|l| l.base >= n).count();
        let kernel_gens: Vec<Perm> = graph
            .levels
            .get(lift_levels)
            .map(|l| l.gens.iter().map(|z| split(z, n).0).collect())
            .unwrap_or_default();
        let kernel = PermGroup::new(n, kernel_gens)?;
        let image = PermGroup::new(m, gen_images.clone())?;
        Ok(GroupHom {
            domain,
            codomain_degree,
            gen_images,
            image,
            kernel,
            graph_codomain_first: graph,
            lift_levels,
            graph_domain_first: OnceLock::new(),
        })
    }

    /// The identity map of `g`.
    pub fn identity(g: &PermGroup) -> GroupHom {
        GroupHom::new(g.clone(), g.degree(), g.generators().to_vec()).expect("identity is a hom")
    }

    /// The action of `g` on an invariant set of 0-based points.
    pub(crate) fn restriction0(g: &PermGroup, points: &[usize]) -> Result<GroupHom> {
        let images = g
            .generators()
            .iter()
            .map(|x| x.restrict(points))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::new(g.clone(), points.len(), images)
    }

    /// The action of `g` on a union of its orbits (1-based points, kept in
    /// the given order).
    pub fn restriction(g: &PermGroup, points: &[usize]) -> Result<GroupHom> {
        let pts = points
            .iter()
            .map(|&x| {
                if x == 0 || x > g.degree() {
                    Err(Error::PointOutOfRange {
                        point: x,
                        degree: g.degree(),
                    })
                } else {
                    Ok(x - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GroupHom::restriction0(g, &pts)
    }

    /// Side-by-side sum of maps with a common domain: the codomain is the
    /// disjoint union of the codomains, in order.
    pub fn direct_sum(domain: &PermGroup, parts: &[&GroupHom]) -> Result<GroupHom> {
        if parts.is_empty() {
            return Err(Error::Input("direct sum of no maps".into()));
        }
        let degree = parts.iter().map(|h| h.codomain_degree).sum();
        let images = (0..domain.generators().len())
            .map(|i| {
                let pieces: Vec<&Perm> = parts.iter().map(|h| &h.gen_images[i]).collect();
                Perm::direct_sum(&pieces)
            })
            .collect();
        GroupHom::new(domain.clone(), degree, images)
    }

    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn codomain_degree(&self) -> usize {
        self.codomain_degree
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.is_trivial()
    }

    fn domain_first(&self) -> &Chain {
        self.graph_domain_first.get_or_init(|| {
            let n = self.domain.degree();
            let domain_points: Vec<usize> = (0..n).collect();
            let mut chain = Chain::with_base(
                n + self.codomain_degree,
                self.graph_codomain_first.strong_gens(),
                &domain_points,
                None,
            );
            chain.prune();
            chain
        })
    }

    /// Image of an arbitrary element of the domain.
    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        if !self.domain.contains(x)? {
            return Err(Error::NotInGroup(format!("{x} is not in the domain")));
        }
        let n = self.domain.degree();
        let z = pair(x, &Perm::identity(self.codomain_degree));
        let (residue, _) = self.domain_first().strip(&z, 0);
        let (left, right) = split(&residue, n);
        debug_assert!(left.is_identity());
        Ok(right.inverse())
    }

    /// Some preimage of an element of the image.
    pub fn lift(&self, y: &Perm) -> Result<Perm> {
        if !self.image.contains(y)? {
            return Err(Error::NotInGroup(format!("{y} is not in the image")));
        }
        let n = self.domain.degree();
        let z = pair(&Perm::identity(n), y);
        let mut h = z;
        for lvl in &self.graph_codomain_first.levels[..self.lift_levels] {
            let b = h.image(lvl.base);
            h = h.mul(lvl.inv_rep(b).expect("y is in the image"));
        }
        let (left, right) = split(&h, n);
        debug_assert!(right.is_identity());
        Ok(left.inverse())
    }

    /// Preimage of a subgroup of the image.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        let mut gens = self.kernel.nontrivial_generators();
        for y in sub.generators() {
            gens.push(self.lift(y)?);
        }
        PermGroup::new(self.domain.degree(), gens)
    }

    /// Image of a subgroup of the domain.
    pub fn map_subgroup(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.codomain_degree, gens)
    }

    /// `next` after `self`; `next` must be defined on a group containing
    /// the image of `self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        let images = self
            .gen_images
            .iter()
            .map(|y| next.apply(y))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::new(self.domain.clone(), next.codomain_degree, images)
    }

    /// `|domain| == |image| * |kernel|`.
    pub fn satisfies_isomorphism_theorem(&self) -> bool {
        self.domain.order() == self.image.order() * self.kernel.order()
    }

    pub fn image_order(&self) -> BigUint {
        self.image.order()
    }
}

/// Whether the map has trivial kernel.
pub fn verify_faithful(hom: &GroupHom) -> bool {
    hom.is_injective()
}

/// Kernel of a homomorphism.
pub fn kernel_of(hom: &GroupHom) -> PermGroup {
    hom.kernel().clone()
}

/// Action of `g` on the right cosets of `h`, numbered in breadth-first
/// order from `h` itself. Also returns a representative of each coset.
pub(crate) fn coset_action_with_reps(g: &PermGroup, h: &PermGroup) -> Result<(GroupHom, Vec<Perm>)> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            actual: h.degree(),
        });
    }
    if let Some(x) = h.generators().iter().find(|x| !g.has(x)) {
        return Err(Error::NotASubgroup(format!("generator {x} is not in the group")));
    }
    let n = g.degree();
    let base = g.chain().base();
    // With the base of g as prefix, an element of the coset is pinned down by
    // its base image; the lexicographically least one names the coset.
    let hchain = Chain::with_base(n, h.strong_generators(), &base, None);
    let key = |x: &Perm| -> Vec<u32> {
        let mut y = x.clone();
        for lvl in &hchain.levels {
            let d = *lvl.orbit.iter().min_by_key(|&&d| y.image(d)).expect("orbit is nonempty");
            y = lvl.rep(d).expect("d is in the orbit").mul(&y);
        }
        base.iter().map(|&b| y.image(b) as u32).collect()
    };
    let gens = g.generators();
    let mut reps = vec![Perm::identity(n)];
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    index.insert(key(&reps[0]), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (s, img) in gens.iter().zip(images.iter_mut()) {
            let y = reps[i].mul(s);
            let k = key(&y);
            let next = index.len() as u32;
            let j = *index.entry(k).or_insert_with(|| {
                reps.push(y);
                next
            });
            img.push(j);
        }
        i += 1;
    }
    let degree = reps.len();
    let perms = images.into_iter().map(Perm::from_images_unchecked).collect();
    Ok((GroupHom::new(g.clone(), degree, perms)?, reps))
}

/// Action of `g` on the right cosets of a subgroup `h`; the kernel is the
/// core of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<GroupHom> {
    Ok(coset_action_with_reps(g, h)?.0)
}
