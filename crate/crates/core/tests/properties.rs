mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use quotshrink::blocks::{block_action, minimal_block};
use quotshrink::catalog::{alternating, cyclic, symmetric};
use quotshrink::cert::{Certificate, Mode, ProblemInput};
use quotshrink::wreath::{product_action_element, wreath_imprimitive, wreath_product_action};
use quotshrink::{coset_action, embed_quotient, emit_certificate, verify_certificate, Perm, PermGroup, WreathLabeling};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

fn group(n: usize, max_gens: usize) -> impl Strategy<Value = PermGroup> {
    prop::collection::vec(perm(n), 1..=max_gens).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_are_pointwise(a in perm(7), b in perm(7), c in perm(7)) {
        let ab = a.mul(&b);
        for x in 1..=7 {
            prop_assert_eq!(ab.act(x).unwrap(), b.act(a.act(x).unwrap()).unwrap());
        }
        prop_assert_eq!(ab.mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(Perm::parse_cycles(&a.format_cycles(), 7).unwrap(), a.clone());
        prop_assert_eq!(a.conj(&b), b.inverse().mul(&a).mul(&b));
    }

    #[test]
    fn chain_order_matches_enumeration(g in group(6, 3)) {
        let elems = common::elements(&g);
        prop_assert_eq!(g.order(), BigUint::from(elems.len()));
        for x in elems.iter().take(20) {
            prop_assert!(g.contains(x).unwrap());
        }
        let all: HashSet<Perm> = elems.into_iter().collect();
        let sym = common::elements(&symmetric(6));
        for x in sym.iter().step_by(37) {
            prop_assert_eq!(g.contains(x).unwrap(), all.contains(x));
        }
    }

    #[test]
    fn coset_action_kernel_is_the_core(g in group(5, 2), h_gens in prop::collection::vec(0usize..1000, 1..3)) {
        let elems = common::elements(&g);
        let h = PermGroup::new(5, h_gens.iter().map(|&i| elems[i % elems.len()].clone()).collect()).unwrap();
        let act = coset_action(&g, &h).unwrap();
        prop_assert_eq!(BigUint::from(act.codomain_degree()), g.index_of(&h));
        let hs: HashSet<Perm> = common::elements(&h).into_iter().collect();
        let core: Vec<&Perm> = hs.iter().filter(|x| elems.iter().all(|y| hs.contains(&x.conj(y)))).collect();
        prop_assert_eq!(act.kernel().order(), BigUint::from(core.len()));
        for x in core {
            prop_assert!(act.kernel().contains(x).unwrap());
        }
    }

    #[test]
    fn minimal_blocks_are_invariant(g in group(8, 2), a in 1usize..=8, b in 1usize..=8) {
        prop_assume!(a != b && g.is_transitive());
        let sys = minimal_block(&g, a, b).unwrap();
        prop_assert!(sys.is_invariant_under(&g));
        prop_assert_eq!(sys.block_of(a).unwrap(), sys.block_of(b).unwrap());
        let act = block_action(&g, &sys).unwrap();
        prop_assert_eq!(act.codomain_degree(), sys.num_blocks());
        // the finest such partition: components of the orbital graph of {a, b}
        let mut comp: Vec<usize> = (0..=8).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for x in common::elements(&g) {
            let (ra, rb) = (find(&mut comp, x.act(a).unwrap()), find(&mut comp, x.act(b).unwrap()));
            comp[ra] = rb;
        }
        for x in 1..=8 {
            for y in 1..=8 {
                let same = find(&mut comp, x) == find(&mut comp, y);
                prop_assert_eq!(same, sys.block_of(x).unwrap() == sys.block_of(y).unwrap());
            }
        }
    }

    #[test]
    fn wreath_orders(ui in 0usize..4, vi in 0usize..4) {
        let us = [symmetric(2), cyclic(3), symmetric(3), alternating(4)];
        let vs = [symmetric(2), cyclic(3), symmetric(3), PermGroup::trivial(2)];
        let (u, v) = (&us[ui], &vs[vi]);
        let expected = u.order().pow(v.degree() as u32) * v.order();
        prop_assert_eq!(wreath_imprimitive(u, v).unwrap().group().order(), expected.clone());
        prop_assert_eq!(wreath_product_action(u, v).unwrap().group().order(), expected);
    }

    #[test]
    fn problem_input_json_round_trips(g in group(6, 3), with_n in any::<bool>()) {
        let n = with_n.then(|| g.clone());
        let p = ProblemInput::new(&g, n.as_ref(), Some(Mode::Analyze));
        prop_assert_eq!(ProblemInput::from_json(&p.to_json()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// The product action of `(f, v)` sends `phi` to the function
    /// `c -> phi(c^(v^-1))^(f(c^(v^-1)))`.
    #[test]
    fn product_action_formula(
        phi in prop::collection::vec(1usize..=4, 3),
        f in prop::collection::vec(perm(4), 3),
        v in perm(3),
    ) {
        let lab = WreathLabeling::Product { delta: 4, gamma: 3 };
        let x = product_action_element(&lab, &f, &v).unwrap();
        // functions are numbered lexicographically, first coordinate first
        let point = 1 + phi.iter().fold(0, |acc, &d| acc * 4 + (d - 1));
        prop_assert_eq!(lab.point_of_function(&phi).unwrap(), point);
        let psi = lab.function_of_point(x.act(point).unwrap()).unwrap();
        let v_inv = v.inverse();
        for c in 1..=3 {
            let c0 = v_inv.act(c).unwrap();
            prop_assert_eq!(psi[c - 1], f[c0 - 1].act(phi[c0 - 1]).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn certificates_reject_image_mutations(which in 0usize..2, replacement in perm(2)) {
        let g = symmetric(5);
        let n = alternating(5);
        let mut cert = emit_certificate(&embed_quotient(&g, &n).unwrap());
        let json = cert.to_json();
        prop_assert_eq!(Certificate::from_json(&json).unwrap(), cert.clone());
        prop_assert!(verify_certificate(&cert).is_ok());
        let old = cert.images[which].clone();
        let new = replacement.format_cycles();
        prop_assume!(Perm::parse_cycles(&old, 2).unwrap() != replacement);
        cert.images[which] = new;
        prop_assert!(verify_certificate(&cert).is_err());
    }
}
