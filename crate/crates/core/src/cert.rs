//! Problem inputs and certificates: JSON and plain-text parsing, emission
//! and from-scratch verification.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::perm::{format_all, parse_all, Perm};
use crate::quotient::{degree_bound, QuotientRep, TraceStep};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Reduce,
    ReduceRadical,
    MinDegree,
    Analyze,
    Verify,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Reduce => "reduce",
            Mode::ReduceRadical => "reduce-radical",
            Mode::MinDegree => "min-degree",
            Mode::Analyze => "analyze",
            Mode::Verify => "verify",
        }
    }

    fn parse(s: &str) -> Result<Mode> {
        match s {
            "reduce" => Ok(Mode::Reduce),
            "reduce-radical" => Ok(Mode::ReduceRadical),
            "min-degree" => Ok(Mode::MinDegree),
            "analyze" => Ok(Mode::Analyze),
            "verify" => Ok(Mode::Verify),
            _ => Err(Error::Input(format!("unknown mode {s:?}"))),
        }
    }
}

/// A group `G` given by generators and, when the mode needs it, a normal
/// subgroup `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInput {
    pub schema: u32,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl ProblemInput {
    pub fn new(g: &PermGroup, n: Option<&PermGroup>, mode: Option<Mode>) -> ProblemInput {
        ProblemInput {
            schema: SCHEMA,
            degree: g.degree(),
            generators: format_all(g.generators()),
            normal_generators: n.map(|n| format_all(n.generators())),
            mode,
        }
    }

    pub fn from_json(text: &str) -> Result<ProblemInput> {
        let p: ProblemInput = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        p.check_schema()?;
        Ok(p)
    }

    /// The plain-text format: a `degree N` line, optionally `mode M`, one
    /// generator per line, then a line `normal` followed by the generators
    /// of `N`. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<ProblemInput> {
        let mut degree = None;
        let mut mode = None;
        let mut gens = Vec::new();
        let mut normal: Option<Vec<String>> = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Input(format!("line {}: {msg}", no + 1));
            if let Some(rest) = line.strip_prefix("degree") {
                let d = rest.trim().parse().map_err(|_| bad("expected `degree <positive integer>`"))?;
                degree = Some(d);
            } else if let Some(rest) = line.strip_prefix("mode") {
                mode = Some(Mode::parse(rest.trim())?);
            } else if line == "normal" {
                if normal.is_some() {
                    return Err(bad("second `normal` section"));
                }
                normal = Some(Vec::new());
            } else if degree.is_none() {
                return Err(bad("generators before the `degree` line"));
            } else if let Some(ns) = normal.as_mut() {
                ns.push(line.to_string());
            } else {
                gens.push(line.to_string());
            }
        }
        Ok(ProblemInput {
            schema: SCHEMA,
            degree: degree.ok_or_else(|| Error::Input("missing `degree` line".into()))?,
            generators: gens,
            normal_generators: normal,
            mode,
        })
    }

    pub fn to_json(&self) -> String {
        to_json_sorted(self)
    }

    fn check_schema(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::Input(format!("unsupported schema {}", self.schema)));
        }
        Ok(())
    }

    /// Checks that `N` is given exactly when `mode` needs it.
    pub fn check_mode(&self, mode: Mode) -> Result<()> {
        match mode {
            Mode::Reduce | Mode::ReduceRadical if self.normal_generators.is_none() => Err(Error::Input(format!(
                "mode {} needs normal_generators",
                mode.name()
            ))),
            Mode::MinDegree if self.normal_generators.is_some() => {
                Err(Error::Input("mode min-degree takes no normal_generators".into()))
            }
            Mode::Verify => Err(Error::Input("verify takes a certificate, not a problem".into())),
            _ => Ok(()),
        }
    }

    pub fn group(&self) -> Result<PermGroup> {
        self.check_schema()?;
        if self.degree == 0 {
            return Err(Error::Input("degree must be positive".into()));
        }
        PermGroup::new(self.degree, parse_all(&self.generators, self.degree)?)
    }

    pub fn normal_subgroup(&self) -> Result<Option<PermGroup>> {
        match &self.normal_generators {
            None => Ok(None),
            Some(gens) => Ok(Some(PermGroup::new(self.degree, parse_all(gens, self.degree)?)?)),
        }
    }
}

/// Everything needed to re-check a reduction without further context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub input: ProblemInput,
    /// Images of `input.generators`, in order.
    pub images: Vec<String>,
    pub m: usize,
    pub n: usize,
    pub transitive: bool,
    pub bound_ok: bool,
    /// Decimal.
    pub kernel_order: String,
    #[serde(default)]
    pub kernel_generators: Vec<String>,
    pub trace: Vec<TraceStep>,
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        to_json_sorted(self)
    }
}

/// Pretty JSON with object keys in sorted order.
pub fn to_json_sorted<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

pub fn emit_certificate(rep: &QuotientRep) -> Certificate {
    let g = rep.rho.domain();
    let kernel = rep.rho.kernel();
    Certificate {
        schema: SCHEMA,
        input: ProblemInput::new(g, Some(kernel), None),
        images: format_all(rep.rho.gen_images()),
        m: rep.m,
        n: rep.n,
        transitive: rep.bound_certificate.transitive,
        bound_ok: rep.bound_certificate.satisfied,
        kernel_order: rep.kernel_certificate.kernel_order.to_string(),
        kernel_generators: format_all(kernel.generators()),
        trace: rep.trace.clone(),
    }
}

/// What `verify` re-derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub m: usize,
    pub n: usize,
    pub transitive: bool,
    pub max_degree: usize,
    pub kernel_order: String,
    pub stages: usize,
}

fn max_point(texts: &[String]) -> usize {
    texts
        .iter()
        .flat_map(|t| t.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|tok| tok.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

fn hom_from_strings(g: &PermGroup, degree: usize, images: &[String]) -> Result<GroupHom> {
    if images.len() != g.generators().len() {
        return Err(Error::Input(format!(
            "{} images for {} generators",
            images.len(),
            g.generators().len()
        )));
    }
    GroupHom::new(g.clone(), degree, parse_all(images, degree)?)
}

/// Re-derives the kernel, the bound and the staged construction from the
/// certificate alone.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyReport> {
    if cert.schema != SCHEMA {
        return Err(Error::Input(format!("unsupported schema {}", cert.schema)));
    }
    let g = cert.input.group()?;
    let n = cert
        .input
        .normal_subgroup()?
        .ok_or_else(|| Error::Input("certificate input has no normal_generators".into()))?;

    let image_degree = cert.m.max(max_point(&cert.images)).max(1);
    let rho = hom_from_strings(&g, image_degree, &cert.images).map_err(|e| match e {
        Error::NotAHomomorphism => Error::KernelMismatch("images do not define a homomorphism".into()),
        other => Error::KernelMismatch(other.to_string()),
    })?;
    let kernel = rho.kernel();
    if !kernel.same_elements(&n) {
        return Err(Error::KernelMismatch(format!(
            "kernel has order {}, N has order {}",
            kernel.order(),
            n.order()
        )));
    }
    let order = kernel.order();
    if cert.kernel_order.parse::<BigUint>().ok() != Some(order.clone()) {
        return Err(Error::KernelMismatch(format!(
            "claimed kernel order {} but it is {order}",
            cert.kernel_order
        )));
    }
    for k in &cert.kernel_generators {
        let x = Perm::parse_cycles(k, g.degree()).map_err(|e| Error::KernelMismatch(e.to_string()))?;
        if !kernel.has(&x) {
            return Err(Error::KernelMismatch(format!("{k} is not in the kernel")));
        }
    }

    let stages: Vec<&TraceStep> = cert.trace.iter().filter(|s| s.depth == 0).collect();
    let transitive = g.is_transitive();
    let max_degree = degree_bound(g.degree(), transitive);
    if cert.n != g.degree() {
        return Err(Error::BoundMismatch(format!("n = {} but the input has degree {}", cert.n, g.degree())));
    }
    if cert.m < image_degree {
        return Err(Error::BoundMismatch(format!("m = {} but the images move point {image_degree}", cert.m)));
    }
    if let Some(last) = stages.last() {
        if last.degree_out != cert.m {
            return Err(Error::BoundMismatch(format!(
                "m = {} but the construction ends at degree {}",
                cert.m, last.degree_out
            )));
        }
    }
    if cert.transitive != transitive {
        return Err(Error::BoundMismatch(format!("transitivity claimed {} is {transitive}", cert.transitive)));
    }
    if cert.m > max_degree {
        return Err(Error::BoundMismatch(format!("m = {} exceeds {max_degree}", cert.m)));
    }
    if !cert.bound_ok {
        return Err(Error::BoundMismatch("certificate claims the bound fails".into()));
    }

    replay(&g, &stages, &cert.images)?;
    Ok(VerifyReport {
        m: cert.m,
        n: cert.n,
        transitive,
        max_degree,
        kernel_order: order.to_string(),
        stages: stages.len(),
    })
}

/// Composes the depth-0 stages: each maps the previous stage's images.
fn replay(g: &PermGroup, stages: &[&TraceStep], images: &[String]) -> Result<()> {
    if stages.is_empty() {
        return Err(Error::TraceMismatch("no top-level stages".into()));
    }
    let mut cur = g.clone();
    let mut cur_images = format_all(g.generators());
    for (i, s) in stages.iter().enumerate() {
        if s.degree_in != cur.degree() {
            return Err(Error::TraceMismatch(format!(
                "stage {} starts at degree {} after degree {}",
                i + 1,
                s.degree_in,
                cur.degree()
            )));
        }
        let imgs = s
            .images
            .as_ref()
            .ok_or_else(|| Error::TraceMismatch(format!("stage {} has no images", i + 1)))?;
        let hom = hom_from_strings(&cur, s.degree_out, imgs)
            .map_err(|e| Error::TraceMismatch(format!("stage {}: {e}", i + 1)))?;
        cur = hom.image().clone();
        cur_images = format_all(hom.gen_images());
    }
    let expected = parse_all(images, cur.degree()).map_err(|e| Error::TraceMismatch(e.to_string()))?;
    if format_all(&expected) != cur_images {
        return Err(Error::TraceMismatch("stages do not compose to the images".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::embed_quotient;

    fn s5_input() -> ProblemInput {
        ProblemInput::from_text(
            "# Sym(5) over Alt(5)\ndegree 5\nmode reduce\n(1 2 3 4 5)\n(1 2)\nnormal\n(1 2 3)\n(3 4 5) # comment\n",
        )
        .unwrap()
    }

    #[test]
    fn text_format() {
        let p = s5_input();
        assert_eq!(p.degree, 5);
        assert_eq!(p.mode, Some(Mode::Reduce));
        assert_eq!(p.generators, vec!["(1 2 3 4 5)", "(1 2)"]);
        assert_eq!(p.normal_generators.as_deref().unwrap(), ["(1 2 3)", "(3 4 5)"]);
        assert_eq!(ProblemInput::from_json(&p.to_json()).unwrap(), p);
        assert!(ProblemInput::from_text("(1 2)\ndegree 2").is_err());
        assert!(ProblemInput::from_text("degree x").is_err());
        assert!(p.check_mode(Mode::MinDegree).is_err());
        assert!(p.check_mode(Mode::Reduce).is_ok());
    }

    #[test]
    fn certificate_round_trip_and_tampering() {
        let p = s5_input();
        let rep = embed_quotient(&p.group().unwrap(), &p.normal_subgroup().unwrap().unwrap()).unwrap();
        let mut cert = emit_certificate(&rep);
        cert.input = p;
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        let r = verify_certificate(&back).unwrap();
        assert_eq!((r.m, r.n, r.max_degree), (2, 5, 2));

        let mut bad = cert.clone();
        bad.images[0] = "(1 2)".into();
        assert!(matches!(verify_certificate(&bad), Err(Error::KernelMismatch(_))));
        let mut bad = cert.clone();
        bad.m = 1;
        assert!(matches!(verify_certificate(&bad), Err(Error::BoundMismatch(_))));
        let mut bad = cert.clone();
        bad.m = 3;
        assert!(matches!(verify_certificate(&bad), Err(Error::BoundMismatch(_))));
        let mut bad = cert.clone();
        bad.kernel_order = "120".into();
        assert!(matches!(verify_certificate(&bad), Err(Error::KernelMismatch(_))));
        let mut bad = cert;
        bad.trace[0].images = Some(vec!["()".into(), "()".into()]);
        assert!(matches!(verify_certificate(&bad), Err(Error::TraceMismatch(_))));
    }
}
