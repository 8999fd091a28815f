//! Quick property checks run by `quotshrink selftest`.

use serde::Serialize;

use crate::catalog::{alternating, cyclic, direct_product, pgaml2, psl2, reduction_catalog, symmetric};
use crate::cert::{emit_certificate, verify_certificate};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::normal::{check_normsd, check_ntproj, socle_decomposition};
use crate::perm::Perm;
use crate::quotient::{check_minprimdeg, check_minwpquot, embed_quotient, embed_quotient_radical};
use crate::wreath::{prodact_v_orbit, wreath_product_action};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, f: impl FnOnce() -> Result<String>) -> Check {
    match f() {
        Ok(detail) => Check {
            name: name.into(),
            passed: true,
            detail,
        },
        Err(e) => Check {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// `{(s, s^phi)}` inside `S x S` on twice the points of `s`.
pub fn diagonal_subgroup(s: &PermGroup, phi: &Perm) -> Result<PermGroup> {
    let gens = s
        .generators()
        .iter()
        .map(|x| Perm::direct_sum(&[x, &x.conj(phi)]))
        .collect();
    PermGroup::new(2 * s.degree(), gens)
}

pub fn run() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("diagonals are self-normalizing", || {
        let a5 = alternating(5);
        let n = direct_product(&[&a5, &a5]);
        let dec = socle_decomposition(&n, &n)?;
        let phis = ["()", "(1 2 3)", "(1 2)", "(1 2 3 4)"];
        for s in phis {
            let h = diagonal_subgroup(&a5, &Perm::parse_cycles(s, 5)?)?;
            check_normsd(&dec, &h)?;
        }
        Ok(format!("{} diagonals", phis.len()))
    }));
    out.push(check("normal subgroups contain the factors they project onto", || {
        let a5 = alternating(5);
        let one = PermGroup::trivial(5);
        let n = direct_product(&[&a5, &a5, &one]);
        let k = direct_product(&[&one, &one, &a5]);
        let s1 = direct_product(&[&a5, &one, &one]);
        let mut total = 0;
        for l in [s1.clone(), n.clone(), k.closure(s1.generators())?] {
            total += check_ntproj(&k, &n, &l)?.len();
        }
        Ok(format!("{total} projections checked"))
    }));
    out.push(check("product action top group fixes the function orbit", || {
        for (u, v) in [(symmetric(2), symmetric(3)), (alternating(5), symmetric(2)), (symmetric(3), cyclic(3))] {
            let w = wreath_product_action(&u, &v)?;
            prodact_v_orbit(&w, 1, 2)?;
        }
        Ok("3 wreath products".into())
    }));
    out.push(check("degree inequalities", || {
        let s5 = symmetric(5);
        let a5 = alternating(5);
        let r = check_minprimdeg(&s5, &a5)?;
        let g = pgaml2(9)?;
        let n = psl2(9)?;
        let dec = socle_decomposition(&g, &n)?;
        let w = check_minwpquot(&g, &n, &dec)?;
        Ok(format!("P(T)^k = {}, P(G/N) = {}", r.p_t_pow_k, w.p_quotient))
    }));
    out.push(check("catalog reductions certify", || {
        let cat = reduction_catalog();
        for inst in &cat {
            let rep = if inst.minimal {
                embed_quotient(&inst.g, &inst.n)
            } else {
                embed_quotient_radical(&inst.g, &inst.n)
            }
            .map_err(|e| Error::LemmaViolated(format!("{}: {e}", inst.name)))?;
            verify_certificate(&emit_certificate(&rep))
                .map_err(|e| Error::LemmaViolated(format!("{}: {e}", inst.name)))?;
        }
        Ok(format!("{} pairs", cat.len()))
    }));
    out
}
