//! Permutations of `{1..degree}`.
//!
//! Internally points are 0-based; every public entry point that takes or
//! returns a point in user terms (`act`, cycle notation) is 1-based.
//!
//! Products use the right-action convention: `x^(pq) = (x^p)^q`, so
//! `p.compose(&q)` applies `p` first and then `q`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree >= 1, "permutation degree must be positive");
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the
    /// image of point `i`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::PointOutOfRange {
                point: 0,
                degree: images.len(),
            });
        }
        Perm::from_images0(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub(crate) fn from_images0(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n == 0 {
            return Err(Error::MalformedCycles("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange {
                    point: x + 1,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::MalformedCycles(format!(
                    "point {} appears twice",
                    x + 1
                )));
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation from 0-based images without validation.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(!images.is_empty());
        Perm { images }
    }

    /// Builds a permutation of `degree` points from 0-based disjoint cycles.
    pub(crate) fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::MalformedCycles(format!(
                        "point {} repeated",
                        x + 1
                    )));
                }
            }
            for i in 0..cycle.len() {
                images[cycle[i]] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images0(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    #[inline]
    pub(crate) fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of the 1-based point `x`.
    pub fn act(&self, x: usize) -> Result<usize> {
        if x == 0 || x > self.degree() {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree(),
            });
        }
        Ok(self.image(x - 1) + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`, with a degree check.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                actual: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// `self` then `other`. Panics on a degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        // x -> x^(g^-1 p g): for y = x^g, y^(g^-1 p g) = (x^p)^g
        let mut out = vec![0u32; self.degree()];
        for (x, &px) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[px as usize];
        }
        Perm { images: out }
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .mul(&other.inverse())
            .mul(self)
            .mul(other)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// 0-based cycles of length at least two, each starting at its smallest
    /// point, sorted by that point.
    pub(crate) fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub(crate) fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    /// 1-based moved points.
    pub fn support(&self) -> Vec<usize> {
        self.moved_points().map(|x| x + 1).collect()
    }

    /// Restriction to an invariant set of 0-based points; point `points[i]`
    /// becomes point `i`.
    pub(crate) fn restrict(&self, points: &[usize]) -> Result<Perm> {
        let mut pos = vec![u32::MAX; self.degree()];
        for (i, &p) in points.iter().enumerate() {
            pos[p] = i as u32;
        }
        let mut images = Vec::with_capacity(points.len());
        for &p in points {
            let y = pos[self.image(p)];
            if y == u32::MAX {
                return Err(Error::NotInvariant);
            }
            images.push(y);
        }
        Ok(Perm { images })
    }

    /// Embeds into a larger degree, acting on `offset..offset + self.degree()`
    /// and fixing everything else.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Perm { images }
    }

    /// Disjoint-union product of permutations on consecutive point ranges.
    pub fn direct_sum(parts: &[&Perm]) -> Perm {
        let mut images = Vec::with_capacity(parts.iter().map(|p| p.degree()).sum());
        let mut offset = 0u32;
        for p in parts {
            images.extend(p.images.iter().map(|&x| x + offset));
            offset += p.degree() as u32;
        }
        Perm { images }
    }

    /// Parses disjoint cycle notation with 1-based points.
    ///
    /// Accepts `id`, `()`, or one or more cycles such as `(1 2 3)(4,5)`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        if degree == 0 {
            return Err(Error::MalformedCycles("degree must be positive".into()));
        }
        let t = text.trim();
        if t == "id" || t == "()" {
            return Ok(Perm::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::MalformedCycles(format!("expected '(' in {t:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::MalformedCycles(format!("unclosed cycle in {t:?}")))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::MalformedCycles(format!("bad point {tok:?}")))?;
                if x == 0 || x > degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                cycle.push(x - 1);
            }
            if cycle.len() < 2 {
                return Err(Error::MalformedCycles(format!(
                    "cycle ({inner}) needs at least two points"
                )));
            }
            cycles.push(cycle);
        }
        if cycles.is_empty() {
            return Err(Error::MalformedCycles(format!("no cycles in {t:?}")));
        }
        Perm::from_cycles(degree, &cycles)
    }

    /// Canonical cycle notation; the identity prints as `()`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.format_cycles(), self.degree())
    }
}

/// Helper for documents that carry a degree next to a list of cycle strings.
pub fn parse_all(texts: &[String], degree: usize) -> Result<Vec<Perm>> {
    texts.iter().map(|t| Perm::parse_cycles(t, degree)).collect()
}

pub fn format_all(perms: &[Perm]) -> Vec<String> {
    perms.iter().map(Perm::format_cycles).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(Perm::identity(4).compose(&p("(1 2 3)", 4)).unwrap(), p("(1 2 3)", 4));
        assert!(p("(1 2)", 2).compose(&p("(1 2)", 2)).unwrap().is_identity());
        // apply (1 2 3) then (2 3 4), point by point
        let r = p("(1 2 3)", 4).compose(&p("(2 3 4)", 4)).unwrap();
        let expected: Vec<usize> = (1..=4)
            .map(|x| {
                let a = p("(1 2 3)", 4).act(x).unwrap();
                p("(2 3 4)", 4).act(a).unwrap()
            })
            .collect();
        assert_eq!(expected, vec![3, 4, 1, 2]);
        assert_eq!((1..=4).map(|x| r.act(x).unwrap()).collect::<Vec<_>>(), expected);
        assert!(matches!(
            p("(1 2)", 2).compose(&Perm::identity(3)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Perm::identity(3).inverse(), Perm::identity(3));
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        let x = p("(1 2)(3 4 5)", 5);
        assert_eq!(x.inverse(), p("(1 2)(3 5 4)", 5));
        assert!(x.mul(&x.inverse()).is_identity());
    }

    #[test]
    fn parse_examples() {
        let x = p("(1 2 3)(4 5)", 5);
        assert_eq!(x.images(), vec![2, 3, 1, 5, 4]);
        assert_eq!(Perm::from_images(&[2, 3, 1, 5, 4]).unwrap(), x);
        assert!(Perm::from_images(&[1, 1]).is_err());
        assert_eq!(p("()", 4), Perm::identity(4));
        assert_eq!(p("id", 4), Perm::identity(4));
        assert_eq!(p(" ( 1 , 2 ) ( 3,4 ) ", 4), p("(1 2)(3 4)", 4));
        assert!(matches!(
            Perm::parse_cycles("(1 2)(2 3)", 3),
            Err(Error::MalformedCycles(_))
        ));
        assert!(matches!(
            Perm::parse_cycles("(1 7)", 3),
            Err(Error::PointOutOfRange { point: 7, degree: 3 })
        ));
        assert!(Perm::parse_cycles("(1)", 3).is_err());
        assert!(Perm::parse_cycles("1 2", 3).is_err());
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
    }

    #[test]
    fn act_examples() {
        assert_eq!(p("(1 2 3)", 3).act(1).unwrap(), 2);
        assert_eq!(Perm::identity(5).act(4).unwrap(), 4);
        assert_eq!(p("(1 2)(3 4)", 4).act(3).unwrap(), 4);
        assert!(Perm::identity(5).act(0).is_err());
        assert!(Perm::identity(5).act(6).is_err());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("(3 1 2)(5 4)", 6).format_cycles(), "(1 2 3)(4 5)");
        assert_eq!(Perm::identity(3).format_cycles(), "()");
        assert_eq!(p("(2 3)(1 4)", 4).to_string(), "(1 4)(2 3)");
    }

    #[test]
    fn conj_and_restrict() {
        let a = p("(1 2 3)", 4);
        let g = p("(3 4)", 4);
        assert_eq!(a.conj(&g), g.inverse().mul(&a).mul(&g));
        assert_eq!(a.conj(&g), p("(1 2 4)", 4));
        let r = p("(1 2)(3 4)", 5).restrict(&[2, 3]).unwrap();
        assert_eq!(r, p("(1 2)", 2));
        assert!(p("(1 3)", 3).restrict(&[0, 1]).is_err());
        assert_eq!(p("(1 2 3 4 5 6)", 6).order(), 6);
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
        assert_eq!(p("(1 2 3)", 3).pow(-1), p("(1 3 2)", 3));
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images0(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(x in (1usize..12).prop_flat_map(arb_perm)) {
            prop_assert!(x.mul(&x.inverse()).is_identity());
            prop_assert!(x.inverse().mul(&x).is_identity());
        }

        #[test]
        fn associative(t in (1usize..12).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))) {
            let (a, b, c) = t;
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            // right action: x^(ab) = (x^a)^b
            for x in 0..a.degree() {
                prop_assert_eq!(a.mul(&b).image(x), b.image(a.image(x)));
            }
        }

        #[test]
        fn cycle_notation_round_trips(x in (1usize..15).prop_flat_map(arb_perm)) {
            let s = x.format_cycles();
            prop_assert_eq!(Perm::parse_cycles(&s, x.degree()).unwrap(), x);
        }
    }
}
