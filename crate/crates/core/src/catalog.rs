//! Constructions of the groups used by the self test and the acceptance
//! suite: symmetric, alternating, cyclic and dihedral groups, the
//! projective groups of the line over small fields, products and wreaths.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::wreath::{wreath_imprimitive, wreath_product_action};

fn cycle(n: usize, pts: impl IntoIterator<Item = usize>) -> Perm {
    Perm::from_cycles(n, &[pts.into_iter().collect()]).expect("valid cycle")
}

fn group(n: usize, gens: Vec<Perm>) -> PermGroup {
    PermGroup::new(n, gens).expect("generators have the stated degree")
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    group(n, vec![cycle(n, 0..n), cycle(n, [0, 1])])
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    group(n, vec![cycle(n, [0, 1, 2]), long])
}

pub fn cyclic(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(1);
    }
    group(n, vec![cycle(n, 0..n)])
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> PermGroup {
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    group(n, vec![cycle(n, 0..n), Perm::from_images0(refl).expect("bijection")])
}

/// Disjoint union of the actions, one group per block of points.
pub fn direct_product(parts: &[&PermGroup]) -> PermGroup {
    let n: usize = parts.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for g in parts {
        for x in g.nontrivial_generators() {
            gens.push(x.shifted(offset, n));
        }
        offset += g.degree();
    }
    group(n, gens)
}

/// Several actions of one group side by side. The groups must have
/// generator lists that correspond to each other.
pub fn diagonal(parts: &[&PermGroup]) -> Result<PermGroup> {
    let k = parts[0].generators().len();
    if parts.iter().any(|g| g.generators().len() != k) {
        return Err(Error::Input("generator lists differ in length".into()));
    }
    let n = parts.iter().map(|g| g.degree()).sum();
    let gens = (0..k)
        .map(|i| {
            let pieces: Vec<&Perm> = parts.iter().map(|g| &g.generators()[i]).collect();
            Perm::direct_sum(&pieces)
        })
        .collect();
    PermGroup::new(n, gens)
}

/// Action on unordered pairs of points, pairs ordered lexicographically.
pub fn on_pairs(g: &PermGroup) -> PermGroup {
    let n = g.degree();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let pos = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.binary_search(&(a, b)).expect("pair exists")
    };
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let img = pairs.iter().map(|&(a, b)| pos(x.image(a), x.image(b))).collect();
            Perm::from_images0(img).expect("bijection")
        })
        .collect();
    group(pairs.len(), gens)
}

/// `GF(q)` for `q` prime, 8 or 9. Elements are numbers below `q` whose
/// base-`p` digits are polynomial coefficients.
struct Field {
    q: usize,
    p: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl Field {
    fn new(q: usize) -> Result<Field> {
        let (p, e, modulus): (usize, usize, Vec<usize>) = match q {
            8 => (2, 3, vec![1, 1, 0, 1]),
            9 => (3, 2, vec![1, 0, 1]),
            _ if q >= 2 && (2..q).all(|d| q % d != 0) => (q, 1, vec![0, 1]),
            _ => return Err(Error::Input(format!("unsupported field size {q}"))),
        };
        let digits = |x: usize| -> Vec<usize> { (0..e).map(|i| x / p.pow(i as u32) % p).collect() };
        let number = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = number(&sum);
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0; 2 * e];
                for i in 0..e {
                    for j in 0..e {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (e..2 * e).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate().take(e) {
                            let k = deg - e + i;
                            prod[k] = (prod[k] + p * p - c * m % p) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = number(&prod[..e]);
            }
        }
        Ok(Field { q, p, add, mul })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    fn inv(&self, a: usize) -> usize {
        (1..self.q).find(|&b| self.mul(a, b) == 1).expect("nonzero element")
    }

    fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    fn primitive(&self) -> usize {
        (2..self.q)
            .find(|&w| (1..self.q - 1).all(|k| self.pow(w, k) != 1))
            .unwrap_or(1)
    }
}

/// The projective line: field elements are points `0..q`, infinity is `q`.
fn mobius(f: &Field, a: usize, b: usize, c: usize, d: usize) -> Perm {
    let q = f.q;
    let img = (0..=q)
        .map(|x| {
            if x == q {
                return if c == 0 { q } else { f.mul(a, f.inv(c)) };
            }
            let den = f.add(f.mul(c, x), d);
            if den == 0 {
                q
            } else {
                f.mul(f.add(f.mul(a, x), b), f.inv(den))
            }
        })
        .collect();
    Perm::from_images0(img).expect("invertible map")
}

fn frobenius(f: &Field) -> Perm {
    let img = (0..=f.q).map(|x| if x == f.q { x } else { f.pow(x, f.p) }).collect();
    Perm::from_images0(img).expect("field automorphism")
}

/// `PSL(2,q)` on the `q+1` points of the projective line (field element
/// `e` is point `e+1`, infinity is point `q+1`).
pub fn psl2(q: usize) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let w = f.primitive();
    let scale = if q % 2 == 0 { w } else { f.mul(w, w) };
    let minus_one = f.neg(1);
    PermGroup::new(
        q + 1,
        vec![mobius(&f, 1, 1, 0, 1), mobius(&f, scale, 0, 0, 1), mobius(&f, 0, minus_one, 1, 0)],
    )
}

pub fn pgl2(q: usize) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let w = f.primitive();
    let minus_one = f.neg(1);
    PermGroup::new(
        q + 1,
        vec![mobius(&f, 1, 1, 0, 1), mobius(&f, w, 0, 0, 1), mobius(&f, 0, minus_one, 1, 0)],
    )
}

/// `PGammaL(2,q)`: `PGL(2,q)` extended by the Frobenius map.
pub fn pgaml2(q: usize) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let g = pgl2(q)?;
    g.closure(&[frobenius(&f)])
}

/// Matrices over `GF(p)` acting on nonzero row vectors, numbered by their
/// base-`p` value minus one.
fn linear_group(p: usize, dim: usize, mats: &[Vec<Vec<usize>>]) -> PermGroup {
    let size = p.pow(dim as u32);
    let vec_of = |x: usize| -> Vec<usize> { (0..dim).map(|i| x / p.pow((dim - 1 - i) as u32) % p).collect() };
    let num = |v: &[usize]| -> usize { v.iter().fold(0, |acc, &c| acc * p + c) };
    let gens = mats
        .iter()
        .map(|m| {
            let img = (1..size)
                .map(|x| {
                    let v = vec_of(x);
                    let w: Vec<usize> = (0..dim).map(|j| (0..dim).map(|i| v[i] * m[i][j]).sum::<usize>() % p).collect();
                    num(&w) - 1
                })
                .collect();
            Perm::from_images0(img).expect("invertible matrix")
        })
        .collect();
    group(size - 1, gens)
}

/// `PSL(3,2)` on the 7 points of the Fano plane.
pub fn psl3_2() -> PermGroup {
    linear_group(
        2,
        3,
        &[
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]],
            vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]],
        ],
    )
}

/// `SL(2,3)` on the 8 nonzero vectors of `GF(3)^2`.
pub fn sl2_3() -> PermGroup {
    linear_group(3, 2, &[vec![vec![0, 1], vec![2, 0]], vec![vec![1, 1], vec![0, 1]]])
}

/// The quaternion group of order 8 inside [`sl2_3`].
pub fn quaternion8() -> PermGroup {
    linear_group(3, 2, &[vec![vec![0, 1], vec![2, 0]], vec![vec![1, 1], vec![1, 2]]])
}

/// A pair `(G, N)` with `N` normal in `G`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub g: PermGroup,
    pub n: PermGroup,
    /// `N` is a minimal normal subgroup (otherwise only the radical
    /// reduction applies).
    pub minimal: bool,
}

fn inst(name: &str, g: PermGroup, n: PermGroup, minimal: bool) -> Instance {
    Instance {
        name: name.to_string(),
        g,
        n,
        minimal,
    }
}

/// Last term of the derived series.
pub fn solvable_residual(g: &PermGroup) -> PermGroup {
    let mut cur = g.clone();
    loop {
        let next = cur.derived_subgroup();
        if next.order() == cur.order() {
            return cur;
        }
        cur = next;
    }
}

/// Pairs `(G, N)` of degree at most 30 built from `Alt(5)`, `Alt(6)`,
/// `PSL(2,7)` and `PSL(2,8)`.
pub fn reduction_catalog() -> Vec<Instance> {
    let s5 = symmetric(5);
    let a5 = alternating(5);
    let s6 = symmetric(6);
    let a6 = alternating(6);
    let s2 = symmetric(2);
    let s3 = symmetric(3);
    let c3 = cyclic(3);
    let l27 = psl3_2();
    let pgl7 = pgl2(7).expect("field of size 7");
    let psl7 = psl2(7).expect("field of size 7");
    let pgaml8 = pgaml2(8).expect("field of size 8");
    let psl8 = psl2(8).expect("field of size 8");
    let pgaml9 = pgaml2(9).expect("field of size 9");
    let psl9 = psl2(9).expect("field of size 9");

    let wr = |u: &PermGroup, v: &PermGroup| wreath_imprimitive(u, v).expect("wreath").group().clone();
    let pa = |u: &PermGroup, v: &PermGroup| wreath_product_action(u, v).expect("wreath").group().clone();

    let mut out = vec![
        inst("Sym(5)/Alt(5)", s5.clone(), a5.clone(), true),
        inst("Alt(5)/Alt(5)", a5.clone(), a5.clone(), true),
        inst("Sym(6)/Alt(6)", s6.clone(), a6.clone(), true),
        inst("PSL(3,2)/PSL(3,2)", l27.clone(), l27.clone(), true),
        inst("PGL(2,7)/PSL(2,7)", pgl7.clone(), psl7.clone(), true),
        inst("PGammaL(2,8)/PSL(2,8)", pgaml8.clone(), psl8.clone(), true),
        inst("PGammaL(2,9)/PSL(2,9)", pgaml9.clone(), psl9.clone(), true),
    ];
    let s5s2 = wr(&s5, &s2);
    out.push(inst("Sym(5) wr Sym(2)/Alt(5)^2", s5s2.clone(), solvable_residual(&s5s2), true));
    let s5s3 = wr(&s5, &s3);
    out.push(inst("Sym(5) wr Sym(3)/Alt(5)^3", s5s3.clone(), solvable_residual(&s5s3), true));
    let a5s2 = wr(&a5, &s2);
    out.push(inst("Alt(5) wr Sym(2)/Alt(5)^2", a5s2.clone(), solvable_residual(&a5s2), true));
    let a6s2 = wr(&a6, &s2);
    out.push(inst("Alt(6) wr Sym(2)/Alt(6)^2", a6s2.clone(), solvable_residual(&a6s2), true));
    let s6s2 = wr(&s6, &s2);
    out.push(inst("Sym(6) wr Sym(2)/Alt(6)^2", s6s2.clone(), solvable_residual(&s6s2), true));
    let l27c3 = wr(&l27, &c3);
    out.push(inst("PSL(3,2) wr C3/PSL(3,2)^3", l27c3.clone(), solvable_residual(&l27c3), true));
    let pgl7s2 = wr(&pgl7, &s2);
    out.push(inst("PGL(2,7) wr Sym(2)/PSL(2,7)^2", pgl7s2.clone(), solvable_residual(&pgl7s2), true));
    let pgaml8s2 = wr(&pgaml8, &s2);
    out.push(inst("PGammaL(2,8) wr Sym(2)/PSL(2,8)^2", pgaml8s2.clone(), solvable_residual(&pgaml8s2), true));
    let a5pa = pa(&a5, &s2);
    out.push(inst("Alt(5) wr Sym(2) product/Alt(5)^2", a5pa.clone(), solvable_residual(&a5pa), true));
    let s5pa = pa(&s5, &s2);
    out.push(inst("Sym(5) wr Sym(2) product/Alt(5)^2", s5pa.clone(), solvable_residual(&s5pa), true));

    let s5xs5 = direct_product(&[&s5, &s5]);
    let a5x1 = direct_product(&[&a5, &PermGroup::trivial(5)]);
    out.push(inst("Sym(5) x Sym(5)/Alt(5) x 1", s5xs5.clone(), a5x1, true));
    out.push(inst("Sym(5) x Sym(5)/Alt(5)^2", s5xs5.clone(), direct_product(&[&a5, &a5]), false));
    let s5xs6 = direct_product(&[&s5, &s6]);
    out.push(inst("Sym(5) x Sym(6)/Alt(5) x Alt(6)", s5xs6, direct_product(&[&a5, &a6]), false));
    let s5_on_both = diagonal(&[&s5, &on_pairs(&s5)]).expect("aligned generators");
    let a5_on_both = solvable_residual(&s5_on_both);
    out.push(inst("Sym(5) on points and pairs/Alt(5)", s5_on_both, a5_on_both, true));
    let s5_pairs = on_pairs(&s5);
    out.push(inst("Sym(5) on pairs/Alt(5)", s5_pairs.clone(), solvable_residual(&s5_pairs), true));
    let s6_pairs = on_pairs(&s6);
    out.push(inst("Sym(6) on pairs/Alt(6)", s6_pairs.clone(), solvable_residual(&s6_pairs), true));
    let s5c2 = diagonal(&[&s5, &s5]).expect("aligned generators").closure(&[cycle(10, [0, 5])
        .mul(&cycle(10, [1, 6]))
        .mul(&cycle(10, [2, 7]))
        .mul(&cycle(10, [3, 8]))
        .mul(&cycle(10, [4, 9]))])
        .expect("same degree");
    out.push(inst("Sym(5) x C2 on 10/Alt(5)", s5c2.clone(), solvable_residual(&s5c2), true));
    let s5_c2_intrans = direct_product(&[&s5, &s2]);
    out.push(inst(
        "Sym(5) x Sym(2) on 7/Alt(5)",
        s5_c2_intrans,
        direct_product(&[&a5, &PermGroup::trivial(2)]),
        true,
    ));
    let a5s3 = wr(&a5, &s3);
    out.push(inst("Alt(5) wr Sym(3)/Alt(5)^3", a5s3.clone(), solvable_residual(&a5s3), true));
    let a5xa5 = pa(&a5, &PermGroup::trivial(2));
    out.push(inst("Alt(5) x Alt(5) on 25/Alt(5)^2", a5xa5.clone(), a5xa5, false));
    out
}


/// Small groups for cross-checking the minimal degree search.
pub fn small_groups() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    for n in 2..=9 {
        out.push((format!("C{n}"), cyclic(n)));
    }
    for n in 3..=8 {
        out.push((format!("D{}", 2 * n), dihedral(n)));
    }
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let c4 = cyclic(4);
    out.push(("C2xC2".into(), direct_product(&[&c2, &c2])));
    out.push(("C2xC2xC2".into(), direct_product(&[&c2, &c2, &c2])));
    out.push(("C2xC4".into(), direct_product(&[&c2, &c4])));
    out.push(("C3xC3".into(), direct_product(&[&c3, &c3])));
    out.push(("C2xC6".into(), direct_product(&[&c2, &cyclic(6)])));
    out.push(("C3xS3".into(), direct_product(&[&c3, &symmetric(3)])));
    out.push(("Q8".into(), quaternion8()));
    out.push(("A4".into(), alternating(4)));
    out.push(("S4".into(), symmetric(4)));
    out.push(("SL(2,3)".into(), sl2_3()));
    out.push(("A4xC2".into(), direct_product(&[&alternating(4), &c2])));
    out.push(("S4xC2".into(), direct_product(&[&symmetric(4), &c2])));
    out.push((
        "C2 wr Sym(3)".into(),
        wreath_imprimitive(&c2, &symmetric(3)).expect("wreath").group().clone(),
    ));
    out.push((
        "C2 wr C2".into(),
        wreath_imprimitive(&c2, &c2).expect("wreath").group().clone(),
    ));
    out.push(("S3xS3".into(), direct_product(&[&symmetric(3), &symmetric(3)])));
    out
}
