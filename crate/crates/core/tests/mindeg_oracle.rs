mod common;

use common::{exhaustive_min_degree, grp, Table};
use quotshrink::catalog::{alternating, cyclic, dihedral, direct_product, small_groups, symmetric};
use quotshrink::mindeg::{enumerate_subgroups, min_degree, min_faithful_rep};
use quotshrink::PermGroup;

#[test]
fn branch_and_bound_matches_exhaustive_search() {
    for (name, g) in small_groups() {
        let order = g.order_u64().unwrap();
        if order > 48 {
            continue;
        }
        let expected = exhaustive_min_degree(&g);
        let r = min_faithful_rep(&g).unwrap();
        assert_eq!(r.degree, expected, "{name}");
        assert!(r.witness.is_injective(), "{name}");
        assert_eq!(r.witness.codomain_degree(), expected, "{name}");
    }
}

#[test]
fn spot_values_from_the_oracle() {
    let c2 = cyclic(2);
    let cases: Vec<(&str, PermGroup, usize)> = vec![
        ("trivial", PermGroup::trivial(3), 1),
        ("C2", c2.clone(), 2),
        ("C2xC2", direct_product(&[&c2, &c2]), 4),
        ("D8", dihedral(4), 4),
        ("C6", cyclic(6), 5),
        ("C6 regular", grp(6, &["(1 2 3 4 5 6)"]), 5),
        ("Q8", quotshrink::catalog::quaternion8(), 8),
        ("S3", symmetric(3), 3),
    ];
    for (name, g, value) in cases {
        assert_eq!(exhaustive_min_degree(&g), value, "{name} oracle");
        assert_eq!(min_degree(&g).unwrap(), value, "{name}");
    }
}

#[test]
fn larger_groups_against_the_oracle() {
    for (name, g) in [("A5", alternating(5)), ("S5 on pairs", quotshrink::catalog::on_pairs(&symmetric(5)))] {
        let expected = exhaustive_min_degree(&g);
        assert_eq!(expected, 5, "{name}");
        assert_eq!(min_degree(&g).unwrap(), expected, "{name}");
    }
}

#[test]
fn subgroup_classes_match_brute_force() {
    for (name, g) in small_groups() {
        if g.order_u64().unwrap() > 48 {
            continue;
        }
        let t = Table::new(&g);
        let found = enumerate_subgroups(&g, 20_000).unwrap();
        assert_eq!(found.len(), t.subgroup_class_count(), "{name}");
        for h in &found {
            assert!(h.is_subgroup_of(&g), "{name}");
        }
    }
}
