//! Re-verification of stage-matrix artifacts from their JSON alone.
//!
//! Nothing produced by the builder is trusted: the field is rebuilt from the
//! descriptor, the schedule constants are recomputed, and every condition is
//! checked again on the stored element sets.

use serde::{Deserialize, Serialize};

use crate::conditions::{check_suitable, schedule_index, FiniteStage, Rule, StageSequence, VerificationReport, SCHEDULE_ID};
use crate::error::ParseError;
use crate::field::{fpoly, modp, rational, FieldDescriptor, FieldElement, GfCtx, GfField, Rationals};
use crate::forge::artifact::{Artifact, ArtifactKind, FORMAT};
use crate::forge::BuildStatus;
use crate::par::Exec;
use crate::ring::Ring;

/// One structural check (as opposed to a clause check).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every row and the union pass, and the build is complete.
    Certified,
    /// Every stored row passes, but the build stopped early.
    Partial,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactReport {
    pub verdict: Verdict,
    /// Recomputed clause checks, one report per row and one for the union.
    pub scopes: Vec<(String, VerificationReport)>,
    pub findings: Vec<Finding>,
}

impl ArtifactReport {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Every recomputed clause record that failed, with its scope.
    pub fn clause_failures(&self) -> impl Iterator<Item = (&str, &crate::conditions::ClauseRecord)> {
        self.scopes.iter().flat_map(|(s, r)| r.failures().map(move |c| (s.as_str(), c)))
    }
}

/// Parses and verifies an artifact.
pub fn verify_artifact_str(text: &str, exec: Exec) -> Result<ArtifactReport, ParseError> {
    let art: Artifact = serde_json::from_str(text).map_err(|e| ParseError::Artifact(e.to_string()))?;
    verify_artifact(&art, exec)
}

pub fn verify_artifact_file(path: &std::path::Path, exec: Exec) -> Result<ArtifactReport, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError::Artifact(format!("{}: {e}", path.display())))?;
    verify_artifact_str(&text, exec)
}

pub fn verify_artifact(art: &Artifact, exec: Exec) -> Result<ArtifactReport, ParseError> {
    if art.format != FORMAT {
        return Err(ParseError::Artifact(format!("unknown format `{}`", art.format)));
    }
    if art.schedule_id != SCHEDULE_ID {
        return Err(ParseError::Artifact(format!("unknown schedule `{}`", art.schedule_id)));
    }
    let rows = art.config.rows;
    if art.descriptor.characteristic == 0 {
        let rules = (0..rows as u64)
            .map(|i| {
                let (e, n) = schedule_index(i);
                Rule { a: rational::enumerate(e), n }
            })
            .collect::<Vec<_>>();
        return check_matrix(&Rationals, rational::decode, &rules, art, Vec::new(), exec);
    }
    let (k, mut findings) = rebuild_field(&art.descriptor)?;
    let mut rules = Vec::with_capacity(rows);
    for i in 0..rows as u64 {
        let (e, n) = schedule_index(i);
        match schedule_constant(&art.descriptor, &k, e) {
            Ok(a) => rules.push(Rule { a, n }),
            Err(msg) => {
                findings.push(Finding { check: "schedule constants".into(), pass: false, detail: Some(msg) });
                return Ok(ArtifactReport { verdict: Verdict::Failed, scopes: Vec::new(), findings });
            }
        }
    }
    let p = art.descriptor.characteristic;
    let w = art.descriptor.working_degree;
    let decode = |s: &str| -> Result<FieldElement, ParseError> {
        let (q, x) = FieldElement::decode(s)?;
        if q != p || x.degree != w {
            return Err(ParseError::Element(s.to_string()));
        }
        Ok(x)
    };
    check_matrix(&k, decode, &rules, art, findings, exec)
}

fn finding(check: &str, pass: bool, detail: impl FnOnce() -> String) -> Finding {
    Finding { check: check.into(), pass, detail: (!pass).then(detail) }
}

/// Rebuilds the working field and checks every polynomial and embedding.
fn rebuild_field(d: &FieldDescriptor) -> Result<(GfField, Vec<Finding>), ParseError> {
    let bad = |m: String| ParseError::Artifact(m);
    let p = d.characteristic;
    if !(2..1 << 16).contains(&p) || !modp::is_prime(p as u64) {
        return Err(bad(format!("bad characteristic {p}")));
    }
    if d.chain.first() != Some(&1) || d.chain.last() != Some(&d.working_degree) {
        return Err(bad("chain must run from degree 1 to the working degree".into()));
    }
    let poly = |deg: usize| d.polynomials.iter().find(|r| r.degree == deg).map(|r| r.coeffs.clone());
    let mut findings = Vec::new();
    let chain_ok = d.chain.windows(2).all(|w| w[0] < w[1] && w[1] % w[0] == 0);
    findings.push(finding("chain divisibility", chain_ok, || format!("{:?}", d.chain)));
    let mut polys_ok = true;
    for r in &d.polynomials {
        let shape = r.coeffs.len() == r.degree + 1 && r.coeffs[r.degree] == 1 && r.coeffs.iter().all(|&c| c < p);
        if !shape || !fpoly::is_irreducible(&r.coeffs, p) {
            polys_ok = false;
            findings.push(finding("irreducible polynomials", false, || format!("degree {} polynomial {:?}", r.degree, r.coeffs)));
        }
    }
    if polys_ok {
        findings.push(finding("irreducible polynomials", true, String::new));
    }
    let Some(top) = poly(d.working_degree).filter(|f| f.len() == d.working_degree + 1 && f.iter().all(|&c| c < p)) else {
        return Err(bad(format!("no polynomial for the working degree {}", d.working_degree)));
    };
    let k = GfField::from_modulus(p, top);

    let mut emb_ok = true;
    for e in &d.embeddings {
        let detail = format!("{} -> {}", e.from, e.to);
        let (Some(f), Some(_)) = (poly(e.from), poly(e.to)) else {
            emb_ok = false;
            findings.push(finding("embeddings", false, || format!("{detail}: missing polynomial")));
            continue;
        };
        if e.to % e.from != 0 || e.image.len() != e.to || e.image.iter().any(|&c| c >= p) {
            emb_ok = false;
            findings.push(finding("embeddings", false, || format!("{detail}: malformed")));
            continue;
        }
        let ctx = GfCtx::new(p, poly(e.to).unwrap());
        // f(image) = 0 in the larger field
        let mut acc = ctx.zero();
        for &c in f.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, &e.image), &ctx.constant(c));
        }
        if !ctx.is_zero(&acc) {
            emb_ok = false;
            findings.push(finding("embeddings", false, || format!("{detail}: image is not a root")));
        }
    }
    // images along the chain must agree with composing chain embeddings
    for e in &d.embeddings {
        let Some(pos) = d.chain.iter().position(|&c| c == e.to) else { continue };
        if pos == 0 || e.from == d.chain[pos - 1] {
            continue;
        }
        let below = d.chain[pos - 1];
        let (Some(inner), Some(step)) = (
            d.embeddings.iter().find(|x| x.from == e.from && x.to == below),
            d.embeddings.iter().find(|x| x.from == below && x.to == e.to),
        ) else {
            continue;
        };
        let ctx = GfCtx::new(p, poly(e.to).unwrap());
        if apply(&ctx, &inner.image, &step.image) != e.image {
            emb_ok = false;
            findings.push(finding("embedding coherence", false, || format!("{} -> {} via {below}", e.from, e.to)));
        }
    }
    if emb_ok {
        findings.push(finding("embeddings", true, String::new));
    }
    Ok((k, findings))
}

/// `Σ c_k g^k` for the coordinates `c` of an element and the image `g` of the
/// generator.
fn apply(ctx: &GfCtx, coords: &[u32], g: &[u32]) -> Vec<u32> {
    let mut acc = ctx.zero();
    for &c in coords.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, g), &ctx.constant(c));
    }
    acc
}

/// The `index`-th element of the enumeration of `F_p`-bar, written in the
/// working field of `d`.
fn schedule_constant(d: &FieldDescriptor, k: &GfField, index: u64) -> Result<FieldElement, String> {
    let p = d.characteristic;
    let mut rest = index;
    let mut deg = 1usize;
    loop {
        let count: i128 = modp::divisors(deg as u64).iter().map(|&e| modp::moebius(deg as u64 / e) as i128 * (p as i128).pow(e as u32)).sum();
        if (rest as i128) < count {
            break;
        }
        rest -= count as u64;
        deg += 1;
    }
    if deg == 1 {
        return Ok(k.from_int(rest as i64));
    }
    let f = d.polynomials.iter().find(|r| r.degree == deg).ok_or_else(|| format!("no polynomial for degree {deg}"))?;
    let home = GfCtx::new(p, f.coeffs.clone());
    let mut n = 0u64;
    let coords = loop {
        let x = digits(n, deg, p);
        let new = modp::prime_factors(deg as u64).into_iter().all(|q| {
            let mut y = x.clone();
            for _ in 0..deg / q as usize {
                y = home.frobenius(&y);
            }
            y != x
        });
        if new {
            if rest == 0 {
                break x;
            }
            rest -= 1;
        }
        n += 1;
    };
    if deg == d.working_degree {
        return Ok(k.wrap(coords));
    }
    let e = d
        .embeddings
        .iter()
        .find(|e| e.from == deg && e.to == d.working_degree)
        .ok_or_else(|| format!("no embedding of degree {deg} into the working field"))?;
    Ok(k.wrap(apply(&k.ctx, &coords, &e.image)))
}

/// Base-`p` digits of `n`, most significant first.
fn digits(mut n: u64, d: usize, p: u32) -> Vec<u32> {
    let mut v = vec![0u32; d];
    for k in (0..d).rev() {
        v[k] = (n % p as u64) as u32;
        n /= p as u64;
    }
    v
}

fn check_matrix<R: Ring>(
    ring: &R,
    decode: impl Fn(&str) -> Result<R::Elem, ParseError>,
    rules: &[Rule<R::Elem>],
    art: &Artifact,
    mut findings: Vec<Finding>,
    exec: Exec,
) -> Result<ArtifactReport, ParseError> {
    let zero = ring.zero();
    let j_max = art.config.rows;
    let decode_seq = |stages: &Vec<Vec<String>>| -> Result<StageSequence<R::Elem>, ParseError> {
        let mut out = Vec::with_capacity(stages.len());
        for s in stages {
            let xs = s.iter().map(|x| decode(x)).collect::<Result<Vec<_>, _>>()?;
            out.push(FiniteStage::new(xs));
        }
        Ok(StageSequence::new(out))
    };
    let rows = art.rows.iter().map(&decode_seq).collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() || rows.len() > j_max + 1 {
        return Err(ParseError::Artifact(format!("expected between 1 and {} rows", j_max + 1)));
    }
    let built = rows.len() - 1;
    let single_zero = FiniteStage::singleton(zero.clone());
    findings.push(finding("row 0 is trivial", rows[0].stages.iter().all(|s| *s == single_zero), || "row 0 has a nonzero element".into()));

    let mut scopes = Vec::new();
    for (j, row) in rows.iter().enumerate().skip(1) {
        scopes.push((format!("row {j}"), check_suitable(ring, row, rules, j_max, exec)));
    }
    let union = rows.iter().skip(1).fold(rows[0].clone(), |acc, r| acc.union(r, &zero));
    scopes.push(("union".to_string(), check_suitable(ring, &union, rules, j_max, exec)));

    let stored_union = decode_seq(&art.union_prefix)?;
    findings.push(finding("union prefix matches rows", stored_union.is_contained_in(&union, &zero) && union.is_contained_in(&stored_union, &zero), || "stored union differs from the union of the rows".into()));

    for j in 1..rows.len() {
        let ok = rows[j - 1].is_contained_in(&rows[j], &zero);
        findings.push(finding(&format!("columns increase into row {j}"), ok, || format!("row {} is not contained in row {j}", j - 1)));
    }
    if art.diagonal_witnesses.len() != built {
        findings.push(finding("diagonal witnesses", false, || format!("{} witnesses for {built} rows", art.diagonal_witnesses.len())));
    }
    for j in 1..rows.len() {
        let (old, new) = (rows[j - 1].stage(j, &zero), rows[j].stage(j, &zero));
        let w = art.diagonal_witnesses.get(j - 1).map(|s| decode(s)).transpose()?;
        let ok = new.len() > old.len() && w.is_some_and(|w| new.contains(&w) && !old.contains(&w));
        findings.push(finding(&format!("diagonal growth at {j}"), ok, || format!("A^{j}_{j} does not strictly contain A^{}_{j}", j - 1)));
        let nonzero = union.stage(j, &zero).len() > 1;
        findings.push(finding(&format!("union stage {j} is nontrivial"), nonzero, || format!("union stage {j} is {{0}}")));
    }

    if art.kind == ArtifactKind::Frontier {
        match &art.samples {
            None => findings.push(finding("samples", false, || "frontier artifact without samples".into())),
            Some(s) => {
                let tuples = s.tuples.iter().map(|t| t.iter().map(|x| decode(x)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
                let limit = s.limit.iter().map(|x| decode(x)).collect::<Result<Vec<_>, _>>()?;
                findings.push(finding("limit point is not a sample", !tuples.contains(&limit), || "the limit point is among the samples".into()));
                if s.chosen.len() != built {
                    findings.push(finding("sample choices", false, || format!("{} choices for {built} rows", s.chosen.len())));
                }
                for (j, &c) in s.chosen.iter().enumerate().map(|(k, c)| (k + 1, c)) {
                    let Some(t) = tuples.get(c) else {
                        findings.push(finding("sample choices", false, || format!("row {j} uses missing sample {c}")));
                        continue;
                    };
                    let stage = rows.get(j).map(|r| r.stage(j, &zero)).unwrap_or_else(|| FiniteStage::new(Vec::new()));
                    let ok = t.len() == limit.len() && t.iter().zip(&limit).all(|(x, b)| stage.contains(&ring.sub(x, b)));
                    findings.push(finding(&format!("sample in stage {j}"), ok, || format!("sample {c} is not in A^{j}_{j}")));
                }
            }
        }
    }

    let stored_ok = art.certificates.iter().all(|c| scopes.iter().any(|(s, r)| *s == c.scope && (r.passed() || !c.report.passed())));
    findings.push(finding("stored certificates agree", stored_ok, || "a stored certificate claims a pass the checker refutes".into()));

    let checks_pass = scopes.iter().all(|(_, r)| r.passed()) && findings.iter().all(|f| f.pass);
    let complete = art.status == BuildStatus::Complete && built == j_max;
    let verdict = match (checks_pass, complete) {
        (true, true) => Verdict::Certified,
        (true, false) => Verdict::Partial,
        (false, _) => Verdict::Failed,
    };
    Ok(ArtifactReport { verdict, scopes, findings })
}
