use proptest::prelude::*;
use quotshrink::catalog::{alternating, cyclic, reduction_catalog, symmetric};
use quotshrink::cert::{verify_certificate, Certificate};
use quotshrink::quotient::degree_bound;
use quotshrink::wreath::wreath_imprimitive;
use quotshrink::{embed_quotient, embed_quotient_radical, emit_certificate, Error, Perm, PermGroup};

fn certificates() -> Vec<(String, Certificate)> {
    reduction_catalog()
        .into_iter()
        .map(|inst| {
            let rep = if inst.minimal {
                embed_quotient(&inst.g, &inst.n)
            } else {
                embed_quotient_radical(&inst.g, &inst.n)
            }
            .unwrap();
            (inst.name, emit_certificate(&rep))
        })
        .collect()
}

#[test]
fn every_catalog_certificate_round_trips_and_verifies() {
    for (name, cert) in certificates() {
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert, "{name}");
        let r = verify_certificate(&back).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(r.m, cert.m, "{name}");
        assert!(r.m <= degree_bound(r.n, r.transitive), "{name}");
    }
}

#[test]
fn every_single_image_mutation_is_rejected() {
    for (name, cert) in certificates() {
        if cert.m < 2 {
            continue;
        }
        for i in 0..cert.images.len() {
            let x = Perm::parse_cycles(&cert.images[i], cert.m).unwrap();
            for t in ["(1 2)", "(1 2 3)"] {
                let Ok(t) = Perm::parse_cycles(t, cert.m) else { continue };
                let mut bad = cert.clone();
                bad.images[i] = x.mul(&t).format_cycles();
                assert!(verify_certificate(&bad).is_err(), "{name}: image {i} times {t}");
            }
        }
    }
}

#[test]
fn claimed_fields_are_checked() {
    let (_, cert) = certificates().remove(0);
    let mut bad = cert.clone();
    bad.m += 1;
    assert!(matches!(verify_certificate(&bad), Err(Error::BoundMismatch(_))));
    let mut bad = cert.clone();
    bad.transitive = !bad.transitive;
    assert!(matches!(verify_certificate(&bad), Err(Error::BoundMismatch(_))));
    let mut bad = cert.clone();
    bad.n += 1;
    assert!(matches!(verify_certificate(&bad), Err(Error::BoundMismatch(_))));
    let mut bad = cert.clone();
    bad.trace.retain(|s| s.depth > 0);
    assert!(matches!(verify_certificate(&bad), Err(Error::TraceMismatch(_))));
    let mut bad = cert;
    bad.kernel_generators.push("(1 2)".into());
    assert!(matches!(verify_certificate(&bad), Err(Error::KernelMismatch(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// `U wr V` over a transitive top group, with `N` the base socle.
    #[test]
    fn wreath_reductions_meet_the_bound(ui in 0usize..2, vi in 0usize..4) {
        let us = [symmetric(5), alternating(5)];
        let vs = [symmetric(2), cyclic(3), symmetric(3), cyclic(4)];
        let w = wreath_imprimitive(&us[ui], &vs[vi]).unwrap();
        let g = w.group().clone();
        let n = quotshrink::catalog::solvable_residual(&g);
        let rep = embed_quotient(&g, &n).unwrap();
        prop_assert!(rep.kernel_certificate.equals_n);
        prop_assert!(5 * rep.m <= 2 * rep.n);
        prop_assert!(rep.rho.kernel().same_elements(&n));
        let base: PermGroup = n;
        prop_assert_eq!(base.order(), us[ui].derived_subgroup().order().pow(vs[vi].degree() as u32));
    }
}
