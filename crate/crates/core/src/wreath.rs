//! Wreath products in imprimitive and product action, and the maps into
//! them used by the reduction.

use crate::blocks::{block_action, block_stabilizer, BlockSystem};
use crate::error::{Error, Result};
use crate::group::{orbits_of, PermGroup};
use crate::hom::{coset_action, GroupHom};
use crate::perm::Perm;

const MAX_PRODUCT_DEGREE: usize = 1 << 20;

/// How points of a wreath product domain are numbered.
///
/// Imprimitive action: the pair `(d, c)` with `d` in the base domain and `c`
/// in the top domain is point `c * delta + d`. Product action: a function
/// `f` from the top domain to the base domain is the mixed-radix number
/// with digits `f(0), f(1), ...`, most significant first. Internally all
/// coordinates are 0-based; the public methods use 1-based values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathLabeling {
    Imprimitive { delta: usize, gamma: usize },
    Product { delta: usize, gamma: usize },
}

impl WreathLabeling {
    pub fn degree(&self) -> usize {
        match *self {
            WreathLabeling::Imprimitive { delta, gamma } => delta * gamma,
            WreathLabeling::Product { delta, gamma } => delta.pow(gamma as u32),
        }
    }

    fn sizes(&self) -> (usize, usize) {
        match *self {
            WreathLabeling::Imprimitive { delta, gamma } | WreathLabeling::Product { delta, gamma } => {
                (delta, gamma)
            }
        }
    }

    pub(crate) fn encode_function(&self, phi: &[usize]) -> usize {
        let (delta, _) = self.sizes();
        phi.iter().fold(0, |acc, &d| acc * delta + d)
    }

    pub(crate) fn decode_function(&self, mut p: usize) -> Vec<usize> {
        let (delta, gamma) = self.sizes();
        let mut phi = vec![0; gamma];
        for slot in phi.iter_mut().rev() {
            *slot = p % delta;
            p /= delta;
        }
        phi
    }

    fn check(&self, value: usize, bound: usize) -> Result<usize> {
        if value == 0 || value > bound {
            return Err(Error::PointOutOfRange {
                point: value,
                degree: bound,
            });
        }
        Ok(value - 1)
    }

    /// Point for the pair `(d, c)` (imprimitive action, 1-based).
    pub fn point_of_pair(&self, d: usize, c: usize) -> Result<usize> {
        match *self {
            WreathLabeling::Imprimitive { delta, gamma } => {
                Ok(self.check(c, gamma)? * delta + self.check(d, delta)? + 1)
            }
            WreathLabeling::Product { .. } => Err(Error::Input("labeling is for product action".into())),
        }
    }

    /// Point for the function with values `phi` (product action, 1-based).
    pub fn point_of_function(&self, phi: &[usize]) -> Result<usize> {
        match *self {
            WreathLabeling::Product { delta, gamma } => {
                if phi.len() != gamma {
                    return Err(Error::Input(format!("function needs {gamma} values")));
                }
                let phi0 = phi.iter().map(|&d| self.check(d, delta)).collect::<Result<Vec<_>>>()?;
                Ok(self.encode_function(&phi0) + 1)
            }
            WreathLabeling::Imprimitive { .. } => Err(Error::Input("labeling is for imprimitive action".into())),
        }
    }

    /// Function values (1-based) of a product-action point.
    pub fn function_of_point(&self, p: usize) -> Result<Vec<usize>> {
        let p0 = self.check(p, self.degree())?;
        Ok(self.decode_function(p0).into_iter().map(|d| d + 1).collect())
    }
}

/// A wreath product `U wr V` with the chosen action and its labeling.
#[derive(Clone, Debug)]
pub struct Wreath {
    group: PermGroup,
    labeling: WreathLabeling,
    top: PermGroup,
    base_group: PermGroup,
    top_group: PermGroup,
}

impl Wreath {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn labeling(&self) -> &WreathLabeling {
        &self.labeling
    }

    /// The embedded copy of `V`, generators aligned with those of `V`.
    pub fn top(&self) -> &PermGroup {
        &self.top
    }

    pub fn base_factor(&self) -> &PermGroup {
        &self.base_group
    }

    pub fn top_factor(&self) -> &PermGroup {
        &self.top_group
    }
}

fn orbit_reps(v: &PermGroup) -> Vec<usize> {
    orbits_of(v.generators(), v.degree()).into_iter().map(|o| o[0]).collect()
}

/// `U wr V` acting on `Delta x Gamma`.
///
/// The base group is generated by copies of `U` on one block in each orbit
/// of `V`, so the order is `|U|^|Gamma| |V|` whether or not `V` is
/// transitive.
pub fn wreath_imprimitive(u: &PermGroup, v: &PermGroup) -> Result<Wreath> {
    let (a, b) = (u.degree(), v.degree());
    let lab = WreathLabeling::Imprimitive { delta: a, gamma: b };
    let n = a * b;
    let mut gens = Vec::new();
    for c in orbit_reps(v) {
        for x in u.nontrivial_generators() {
            let mut img: Vec<usize> = (0..n).collect();
            for d in 0..a {
                img[c * a + d] = c * a + x.image(d);
            }
            gens.push(Perm::from_images0(img)?);
        }
    }
    let top_gens = v
        .generators()
        .iter()
        .map(|y| {
            let img = (0..n).map(|p| y.image(p / a) * a + p % a).collect();
            Perm::from_images0(img)
        })
        .collect::<Result<Vec<_>>>()?;
    gens.extend(top_gens.iter().cloned());
    Ok(Wreath {
        group: PermGroup::new(n, gens)?,
        labeling: lab,
        top: PermGroup::new(n, top_gens)?,
        base_group: u.clone(),
        top_group: v.clone(),
    })
}

/// The permutation of `Fun(Gamma, Delta)` induced by the wreath element
/// `(f, v)`: `phi` goes to the function `c -> phi(c') ^ f(c')` where
/// `c' = c ^ (v^-1)`.
pub fn product_action_element(lab: &WreathLabeling, f: &[Perm], v: &Perm) -> Result<Perm> {
    let WreathLabeling::Product { delta, gamma } = *lab else {
        return Err(Error::Input("labeling is for imprimitive action".into()));
    };
    if f.len() != gamma || v.degree() != gamma {
        return Err(Error::Input(format!("need {gamma} base coordinates and a top element of degree {gamma}")));
    }
    if let Some(x) = f.iter().find(|x| x.degree() != delta) {
        return Err(Error::DegreeMismatch {
            expected: delta,
            actual: x.degree(),
        });
    }
    let v_inv = v.inverse();
    let img = (0..lab.degree())
        .map(|p| {
            let phi = lab.decode_function(p);
            let psi: Vec<usize> = (0..gamma)
                .map(|c| {
                    let c0 = v_inv.image(c);
                    f[c0].image(phi[c0])
                })
                .collect();
            lab.encode_function(&psi)
        })
        .collect();
    Perm::from_images0(img)
}

/// `U wr V` acting on functions `Gamma -> Delta`.
pub fn wreath_product_action(u: &PermGroup, v: &PermGroup) -> Result<Wreath> {
    let (a, b) = (u.degree(), v.degree());
    if a < 2 {
        return Err(Error::DegenerateBase);
    }
    let n = a
        .checked_pow(b as u32)
        .filter(|&n| n <= MAX_PRODUCT_DEGREE)
        .ok_or_else(|| Error::Input(format!("product action degree {a}^{b} is too large")))?;
    let lab = WreathLabeling::Product { delta: a, gamma: b };
    let id_u = Perm::identity(a);
    let id_v = Perm::identity(b);
    let mut gens = Vec::new();
    for c in orbit_reps(v) {
        for x in u.nontrivial_generators() {
            let mut f = vec![id_u.clone(); b];
            f[c] = x;
            gens.push(product_action_element(&lab, &f, &id_v)?);
        }
    }
    let ones = vec![id_u; b];
    let top_gens = v
        .generators()
        .iter()
        .map(|y| product_action_element(&lab, &ones, y))
        .collect::<Result<Vec<_>>>()?;
    gens.extend(top_gens.iter().cloned());
    Ok(Wreath {
        group: PermGroup::new(n, gens)?,
        labeling: lab,
        top: PermGroup::new(n, top_gens)?,
        base_group: u.clone(),
        top_group: v.clone(),
    })
}

/// Transversal `t_i` of the block action with `t_i` mapping block 0 to
/// block `i`, found breadth-first over the generators of `g`.
pub(crate) fn block_transversal(g: &PermGroup, action: &GroupHom) -> Result<Vec<Perm>> {
    let k = action.codomain_degree();
    let mut t: Vec<Option<Perm>> = vec![None; k];
    t[0] = Some(Perm::identity(g.degree()));
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let b = queue[i];
        for (s, y) in g.generators().iter().zip(action.gen_images()) {
            let c = y.image(b);
            if t[c].is_none() {
                t[c] = Some(t[b].as_ref().expect("visited").mul(s));
                queue.push(c);
            }
        }
        i += 1;
    }
    t.into_iter()
        .map(|x| x.ok_or(Error::NotTransitive))
        .collect()
}

/// Map of `g` into `X wr Sym(k)` in imprimitive action, where `action`
/// is a transitive action of `g` on `k` things, `transversal[i]` takes
/// thing 0 to thing `i`, and `inner` is a map from the stabilizer of thing
/// 0 to `Sym(d)`: `g` sends `(x, i)` to `(x ^ inner(t_i g t_j^-1), j)`.
pub(crate) fn induced_on_blocks(
    g: &PermGroup,
    action: &GroupHom,
    transversal: &[Perm],
    inner: &GroupHom,
) -> Result<GroupHom> {
    let d = inner.codomain_degree();
    let k = action.codomain_degree();
    let inverses: Vec<Perm> = transversal.iter().map(|t| t.inverse()).collect();
    let images = g
        .generators()
        .iter()
        .zip(action.gen_images())
        .map(|(s, y)| {
            let mut img = vec![0; d * k];
            for i in 0..k {
                let j = y.image(i);
                let a = transversal[i].mul(s).mul(&inverses[j]);
                let z = inner.apply(&a)?;
                for x in 0..d {
                    img[i * d + x] = j * d + z.image(x);
                }
            }
            Perm::from_images0(img)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(g.clone(), d * k, images)
}

/// The embedding of a transitive group into `G_Delta^Delta wr G^Gamma`,
/// where `Delta` is the first block of `sys` and `Gamma` the set of blocks.
/// Points are labeled as in [`wreath_imprimitive`].
pub fn cameron_embedding(g: &PermGroup, sys: &BlockSystem) -> Result<GroupHom> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let action = block_action(g, sys)?;
    let transversal = block_transversal(g, &action)?;
    let stab = block_stabilizer(&action, 0)?;
    let inner = GroupHom::restriction0(&stab, &sys.blocks0()[0])?;
    induced_on_blocks(g, &action, &transversal, &inner)
}

/// The groups `G_Delta^Delta` and `G^Gamma` for a block system.
pub fn block_factors(g: &PermGroup, sys: &BlockSystem) -> Result<(PermGroup, PermGroup)> {
    let action = block_action(g, sys)?;
    let stab = block_stabilizer(&action, 0)?;
    let inner = GroupHom::restriction0(&stab, &sys.blocks0()[0])?;
    Ok((inner.image().clone(), action.image().clone()))
}

/// A faithful action of `g` built from a faithful action of a subgroup
/// `h`: the sum of the actions of `g` on cosets of the preimages in `h` of
/// the point stabilizers of `hom_h`, one per orbit of its image.
pub fn subembed(g: &PermGroup, h: &PermGroup, hom_h: &GroupHom) -> Result<GroupHom> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("H is not contained in G".into()));
    }
    if !hom_h.domain().same_elements(h) {
        return Err(Error::Input("map is not defined on H".into()));
    }
    if !hom_h.is_injective() {
        return Err(Error::NotInjective(format!(
            "map on H has a kernel of order {}",
            hom_h.kernel().order()
        )));
    }
    let image = hom_h.image();
    let parts = image
        .orbits0()
        .into_iter()
        .map(|o| {
            let stab = image.stabilizer0(o[0]);
            let hj = hom_h.preimage(&stab)?;
            coset_action(g, &hj)
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GroupHom> = parts.iter().collect();
    GroupHom::direct_sum(g, &refs)
}

/// The points `phi_c` (value `a` at `c`, `b` elsewhere) of a product
/// action wreath product, one per point `c` of the top domain, after
/// checking that the embedded top group permutes them as it permutes the
/// top domain. Points and `a`, `b` are 1-based.
pub fn prodact_v_orbit(w: &Wreath, a: usize, b: usize) -> Result<Vec<usize>> {
    let WreathLabeling::Product { delta, gamma } = *w.labeling() else {
        return Err(Error::BadPoints("wreath product is not in product action".into()));
    };
    if a == b || a == 0 || b == 0 || a > delta || b > delta {
        return Err(Error::BadPoints(format!(
            "need two distinct points of 1..{delta}, got {a} and {b}"
        )));
    }
    let points: Vec<usize> = (0..gamma)
        .map(|c| {
            let mut phi = vec![b - 1; gamma];
            phi[c] = a - 1;
            w.labeling.encode_function(&phi)
        })
        .collect();
    for (x, y) in w.top.generators().iter().zip(w.top_group.generators()) {
        for c in 0..gamma {
            if x.image(points[c]) != points[y.image(c)] {
                return Err(Error::LemmaViolated(format!(
                    "top element {y} does not permute the functions like the top domain"
                )));
            }
        }
    }
    Ok(points.into_iter().map(|p| p + 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<usize> = (0..n).collect();
        let mut gens = vec![];
        if n > 1 {
            gens.push(Perm::from_cycles(n, &[cyc]).unwrap());
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    #[test]
    fn imprimitive_orders() {
        let w = wreath_imprimitive(&sym(2), &sym(2)).unwrap();
        assert_eq!(w.group().degree(), 4);
        assert_eq!(w.group().order(), BigUint::from(8u32));
        let w = wreath_imprimitive(&sym(5), &sym(2)).unwrap();
        assert_eq!(w.group().order(), BigUint::from(28800u32));
        let w = wreath_imprimitive(&sym(4), &PermGroup::trivial(1)).unwrap();
        assert!(w.group().same_elements(&sym(4)));
        let w = wreath_imprimitive(&sym(2), &PermGroup::trivial(3)).unwrap();
        assert_eq!(w.group().order(), BigUint::from(8u32));
    }

    #[test]
    fn product_action_orders() {
        let w = wreath_product_action(&sym(2), &sym(3)).unwrap();
        assert_eq!(w.group().degree(), 8);
        assert_eq!(w.group().order(), BigUint::from(48u32));
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let w = wreath_product_action(&a5, &sym(2)).unwrap();
        assert_eq!(w.group().degree(), 25);
        assert_eq!(w.group().order(), BigUint::from(7200u32));
        assert!(matches!(
            wreath_product_action(&PermGroup::trivial(1), &sym(2)),
            Err(Error::DegenerateBase)
        ));
    }

    #[test]
    fn top_group_moves_coordinates() {
        let w = wreath_product_action(&sym(3), &sym(3)).unwrap();
        let lab = w.labeling();
        let v = p("(1 2 3)", 3);
        let x = product_action_element(lab, &vec![Perm::identity(3); 3], &v).unwrap();
        for q in 1..=27 {
            let phi = lab.function_of_point(q).unwrap();
            let psi = lab.function_of_point(x.act(q).unwrap()).unwrap();
            for c in 0..3 {
                // psi(c) = phi(c ^ (v^-1))
                assert_eq!(psi[c], phi[v.inverse().image(c)]);
            }
        }
    }

    #[test]
    fn labeling_round_trip() {
        let lab = WreathLabeling::Product { delta: 3, gamma: 2 };
        assert_eq!(lab.point_of_function(&[1, 1]).unwrap(), 1);
        assert_eq!(lab.point_of_function(&[1, 2]).unwrap(), 2);
        assert_eq!(lab.point_of_function(&[2, 1]).unwrap(), 4);
        for q in 1..=9 {
            assert_eq!(lab.point_of_function(&lab.function_of_point(q).unwrap()).unwrap(), q);
        }
        let lab = WreathLabeling::Imprimitive { delta: 3, gamma: 2 };
        assert_eq!(lab.point_of_pair(1, 2).unwrap(), 4);
    }

    #[test]
    fn cameron_examples() {
        let d8 = grp(4, &["(1 3)(2 4)", "(1 2)"]);
        let sys = BlockSystem::from_blocks(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let e = cameron_embedding(&d8, &sys).unwrap();
        assert!(e.is_injective());
        assert_eq!(e.image().order(), BigUint::from(8u32));
        let (u, v) = block_factors(&d8, &sys).unwrap();
        let w = wreath_imprimitive(&u, &v).unwrap();
        assert!(e.image().is_subgroup_of(w.group()));

        let g = grp(6, &["(1 2 3 4 5 6)"]);
        let sys = BlockSystem::from_blocks(6, &[vec![1, 4], vec![2, 5], vec![3, 6]]).unwrap();
        let e = cameron_embedding(&g, &sys).unwrap();
        assert!(e.is_injective());
        let (u, v) = block_factors(&g, &sys).unwrap();
        assert!(e.image().is_subgroup_of(wreath_imprimitive(&u, &v).unwrap().group()));

        let full = wreath_imprimitive(&sym(3), &sym(2)).unwrap();
        let sys = BlockSystem::from_blocks(6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let e = cameron_embedding(full.group(), &sys).unwrap();
        assert!(e.image().same_elements(full.group()));
    }

    #[test]
    fn subembed_examples() {
        let s5 = sym(5);
        let id = GroupHom::identity(&s5);
        assert_eq!(subembed(&s5, &s5, &id).unwrap().codomain_degree(), 5);
        let a5 = grp(5, &["(1 2 3 4 5)", "(3 4 5)"]);
        let nat = GroupHom::identity(&a5);
        let e = subembed(&s5, &a5, &nat).unwrap();
        assert_eq!(e.codomain_degree(), 10);
        assert!(e.is_injective());
        let triv = PermGroup::trivial(5);
        let hom = GroupHom::new(triv.clone(), 1, vec![]).unwrap();
        let e = subembed(&s5, &triv, &hom).unwrap();
        assert_eq!(e.codomain_degree(), 120);
        assert!(e.is_injective());
        let sign = GroupHom::new(s5.clone(), 2, vec![Perm::identity(2), p("(1 2)", 2)]).unwrap();
        assert!(matches!(subembed(&s5, &s5, &sign), Err(Error::NotInjective(_))));
    }

    #[test]
    fn v_orbit_examples() {
        let w = wreath_product_action(&sym(2), &sym(3)).unwrap();
        let pts = prodact_v_orbit(&w, 1, 2).unwrap();
        let lab = w.labeling();
        let expect: Vec<usize> = [[1, 2, 2], [2, 1, 2], [2, 2, 1]]
            .iter()
            .map(|f| lab.point_of_function(f).unwrap())
            .collect();
        assert_eq!(pts, expect);
        let w = wreath_product_action(&sym(2), &PermGroup::trivial(3)).unwrap();
        assert_eq!(prodact_v_orbit(&w, 2, 1).unwrap().len(), 3);
        assert!(matches!(prodact_v_orbit(&w, 1, 1), Err(Error::BadPoints(_))));
        let imp = wreath_imprimitive(&sym(2), &sym(3)).unwrap();
        assert!(matches!(prodact_v_orbit(&imp, 1, 2), Err(Error::BadPoints(_))));
    }
}
