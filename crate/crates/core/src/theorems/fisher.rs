use std::fmt;

use serde::Serialize;

use crate::algebra::{det_ai_bj, Domain, ExactMatrix};
use crate::incidence::{Intersection, IncidenceSystem};

use super::{linear_bound, rank_argument, BoundCertificate, Inequality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FisherVariant {
    Uniform,
    OddTown,
    General,
    Dual,
}

impl FisherVariant {
    pub const ALL: [FisherVariant; 4] =
        [FisherVariant::Uniform, FisherVariant::OddTown, FisherVariant::General, FisherVariant::Dual];

    pub fn name(self) -> &'static str {
        match self {
            FisherVariant::Uniform => "uniform",
            FisherVariant::OddTown => "odd-town",
            FisherVariant::General => "general",
            FisherVariant::Dual => "dual",
        }
    }

    /// `(b, v)` for the set-family variants, `(v, b)` for the design ones.
    fn claim(self, v: usize, b: usize) -> Inequality {
        match self {
            FisherVariant::Uniform | FisherVariant::Dual => Inequality::new("v", v, "b", b),
            FisherVariant::OddTown | FisherVariant::General => Inequality::new("b", b, "v", v),
        }
    }

    /// Runs the checker for this variant.
    pub fn check(self, s: &IncidenceSystem) -> FisherReport {
        match self {
            FisherVariant::Uniform => uniform_fisher(s),
            FisherVariant::OddTown => odd_town(s),
            FisherVariant::General => general_fisher(s),
            FisherVariant::Dual => fisher_dual(s),
        }
    }
}

impl fmt::Display for FisherVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BoundHolds,
    HypothesesViolated,
    TrivialCase,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BoundHolds => "bound-holds",
            Verdict::HypothesesViolated => "hypotheses-violated",
            Verdict::TrivialCase => "trivial-case",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Hypothesis { name: name.into(), passed, detail: detail.into() }
    }
}

/// Outcome of one Fisher-type checker on one system. `bound` is the
/// variant's inequality whenever it was established (bound-holds or a
/// trivial case); `certificate` is present exactly for bound-holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FisherReport {
    pub variant: FisherVariant,
    pub v: usize,
    pub b: usize,
    pub hypotheses: Vec<Hypothesis>,
    pub certificate: Option<BoundCertificate>,
    pub verdict: Verdict,
    pub bound: Option<Inequality>,
}

impl FisherReport {
    fn new(variant: FisherVariant, s: &IncidenceSystem) -> Self {
        FisherReport {
            variant,
            v: s.v(),
            b: s.b(),
            hypotheses: Vec::new(),
            certificate: None,
            verdict: Verdict::HypothesesViolated,
            bound: None,
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.hypotheses.push(Hypothesis::new(name, passed, detail));
        passed
    }

    fn violated(mut self) -> Self {
        self.verdict = Verdict::HypothesesViolated;
        self.certificate = None;
        self.bound = None;
        self
    }

    fn holds(mut self, certificate: BoundCertificate) -> Self {
        self.bound = Some(self.variant.claim(self.v, self.b));
        self.certificate = Some(certificate);
        self.verdict = Verdict::BoundHolds;
        self
    }

    fn trivial(mut self) -> Self {
        self.bound = Some(self.variant.claim(self.v, self.b));
        self.certificate = None;
        self.verdict = Verdict::TrivialCase;
        self
    }

    /// First failed hypothesis, if any.
    pub fn failure(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| !h.passed)
    }

    /// Exit-code sense: the bound was established.
    pub fn is_success(&self) -> bool {
        matches!(self.verdict, Verdict::BoundHolds | Verdict::TrivialCase)
    }

    /// Independent re-check of a report against the system it was
    /// produced from: the bound must match `v` and `b` of the input and
    /// hold, and a certificate must re-verify against a freshly built
    /// incidence matrix.
    pub fn revalidate(&self, s: &IncidenceSystem) -> Result<(), String> {
        if (self.v, self.b) != (s.v(), s.b()) {
            return Err(format!("report is for v={}, b={}", self.v, self.b));
        }
        let claim = self.variant.claim(s.v(), s.b());
        match self.verdict {
            Verdict::HypothesesViolated => {
                if self.failure().is_none() {
                    return Err("violated verdict without a failed hypothesis".into());
                }
                Ok(())
            }
            Verdict::TrivialCase => match &self.bound {
                Some(bound) if bound.same_values(&claim) && bound.holds() => Ok(()),
                other => Err(format!("trivial case with bound {other:?}, expected {claim}")),
            },
            Verdict::BoundHolds => {
                let bound = self.bound.ok_or("bound-holds without a bound")?;
                if !bound.same_values(&claim) || !bound.holds() {
                    return Err(format!("bound {bound} does not establish {claim}"));
                }
                let cert = self.certificate.as_ref().ok_or("bound-holds without a certificate")?;
                let mat = certified_matrix(self.variant, s);
                cert.verify(&mat)?;
                if !cert.inequality.same_values(&claim) {
                    return Err(format!("certificate proves {}, expected {claim}", cert.inequality));
                }
                Ok(())
            }
        }
    }
}

/// The matrix each variant's certificate speaks about.
fn certified_matrix(variant: FisherVariant, s: &IncidenceSystem) -> ExactMatrix {
    match variant {
        FisherVariant::Uniform | FisherVariant::General => s.incidence_matrix(Domain::Rational).into_matrix(),
        FisherVariant::OddTown => s.incidence_matrix(Domain::gf2()).into_matrix(),
        FisherVariant::Dual => s.dual().incidence_matrix(Domain::Rational).into_matrix(),
    }
}

/// Uniform Fisher: a `(v, k, λ)`-BIBD has `v <= b`, by the rank argument
/// on `N` over ℚ. The determinant is cross-checked against the closed
/// form `det((r-λ)I + λJ) = (r-λ)^(v-1)·(r + (v-1)λ)`.
pub fn uniform_fisher(s: &IncidenceSystem) -> FisherReport {
    let mut report = FisherReport::new(FisherVariant::Uniform, s);
    let class = s.classify();
    let v = s.v();

    let mut ok = match class.uniform_k {
        Some(k) => report.check("uniform block size", true, format!("k = {k}")),
        None if s.b() == 0 => report.check("uniform block size", false, "no blocks"),
        None => report.check("uniform block size", false, "block sizes differ"),
    };
    if let Some(k) = class.uniform_k {
        ok &= report.check("block size at least 2", k >= 2, format!("k = {k}"));
        ok &= report.check("incomplete", k < v, format!("k = {k}, v = {v}"));
    }
    ok &= match class.pbd_lambda {
        Some(lambda) => report.check("pairwise balanced", true, format!("λ = {lambda}")),
        None => report.check("pairwise balanced", false, "pair index not a constant λ ≥ 1"),
    };
    if !ok {
        return report.violated();
    }
    let lambda = class.pbd_lambda.expect("checked above");
    let Some(r) = class.regular_r else {
        report.check("regular", false, "BIBD with differing replication numbers");
        return report.violated();
    };

    let n = s.incidence_matrix(Domain::Rational).into_matrix();
    let cert = match rank_argument(&n) {
        Ok(cert) => cert,
        Err(e) => {
            report.check("rank argument applicable", false, e.to_string());
            return report.violated();
        }
    };
    let q = Domain::Rational;
    let closed = det_ai_bj(
        &q.element(r as i64 - lambda as i64).expect("integer"),
        &q.element(lambda).expect("integer"),
        v,
    );
    let det = cert.square_det.clone().expect("rank argument records det");
    match closed {
        Ok(closed) if closed == det => {
            report.check("det(N·Nᵀ) matches closed form", true, format!("{det} = ({r}-{lambda})^{}·({r}+{}·{lambda})", v - 1, v - 1));
        }
        other => {
            let shown = other.map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
            report.check("det(N·Nᵀ) matches closed form", false, format!("Bareiss gave {det}, closed form {shown}"));
            return report.violated();
        }
    }
    report.holds(cert)
}

fn first_pair<F>(s: &IncidenceSystem, mut pred: F) -> Option<(usize, usize)>
where
    F: FnMut(usize, usize) -> bool,
{
    let b = s.b();
    (0..b).flat_map(|i| (i + 1..b).map(move |j| (i, j))).find(|&(i, j)| pred(i, j))
}

/// Odd town: distinct odd-sized clubs with pairwise even intersections
/// number at most `v`. The incidence columns are independent over GF(2).
pub fn odd_town(s: &IncidenceSystem) -> FisherReport {
    let mut report = FisherReport::new(FisherVariant::OddTown, s);
    let blocks = s.blocks();

    let even_block = blocks.iter().position(|blk| blk.len() % 2 == 0);
    let mut ok = match even_block {
        None => report.check("odd block sizes", true, "every block has odd size"),
        Some(j) => report.check("odd block sizes", false, format!("block {j} has even size {}", blocks[j].len())),
    };
    let odd_pair = first_pair(s, |i, j| blocks[i].intersection_size(&blocks[j]) % 2 == 1);
    ok &= match odd_pair {
        None => report.check("even pairwise intersections", true, "every pairwise intersection is even"),
        Some((i, j)) => report.check(
            "even pairwise intersections",
            false,
            format!("pairwise intersection {} is odd (blocks {i} and {j})", blocks[i].intersection_size(&blocks[j])),
        ),
    };
    if !ok {
        return report.violated();
    }
    // the hypotheses force distinct blocks: equal odd blocks meet oddly
    if !report.check("simple (implied)", s.is_simple(), "no repeated blocks") {
        return report.violated();
    }

    let n2 = s.incidence_matrix(Domain::gf2()).into_matrix();
    match linear_bound(Domain::gf2(), s.v(), &n2.columns()) {
        Ok(cert) => {
            report.check("columns independent over GF(2)", true, format!("rank {}", cert.rank_value));
            report.holds(cert)
        }
        Err(e) => {
            report.check("columns independent over GF(2)", false, e.to_string());
            report.violated()
        }
    }
}

/// Generalized Fisher: distinct subsets of `0..v` with a constant pairwise
/// intersection `k >= 1` number at most `v`. Fewer than two blocks and
/// `k = 0` are settled by counting.
pub fn general_fisher(s: &IncidenceSystem) -> FisherReport {
    let mut report = FisherReport::new(FisherVariant::General, s);
    let (v, b) = (s.v(), s.b());

    let duplicate = first_pair(s, |i, j| s.blocks()[i] == s.blocks()[j]);
    let distinct = match duplicate {
        None => report.check("distinct blocks", true, "no repeated blocks"),
        Some((i, j)) => report.check("distinct blocks", false, format!("blocks {i} and {j} are equal")),
    };
    if !distinct {
        return report.violated();
    }

    if b < 2 {
        report.check("at least two blocks", false, format!("b = {b}: trivial case"));
        if b == 1 && v == 0 {
            report.check("at least one point", false, "a block on an empty point set");
            return report.violated();
        }
        return report.trivial();
    }
    report.check("at least two blocks", true, format!("b = {b}"));

    let class = s.classify();
    let k = match class.const_intersect {
        Intersection::Constant(k) => {
            report.check("constant intersection", true, format!("k = {k}"));
            k
        }
        _ => {
            report.check("constant intersection", false, "pairwise intersection sizes differ");
            return report.violated();
        }
    };

    if k == 0 {
        // pairwise disjoint: b nonempty blocks use b distinct points
        if let Some(j) = s.blocks().iter().position(|blk| blk.is_empty()) {
            report.check("nonempty blocks", false, format!("block {j} is empty"));
            return report.violated();
        }
        let covered: usize = s.blocks().iter().map(|blk| blk.len()).sum();
        let counted = b <= covered && covered <= v;
        report.check(
            "disjoint blocks counting",
            counted,
            format!("k = 0: {b} disjoint nonempty blocks cover {covered} of {v} points"),
        );
        return if counted { report.trivial() } else { report.violated() };
    }

    report.check("1 ≤ k ≤ v", k <= v, format!("k = {k}, v = {v}"));
    let nq = s.incidence_matrix(Domain::Rational).into_matrix();
    match linear_bound(Domain::Rational, v, &nq.columns()) {
        Ok(cert) => {
            report.check("columns independent over ℚ", true, format!("rank {}", cert.rank_value));
            report.holds(cert)
        }
        Err(e) => {
            report.check("columns independent over ℚ", false, e.to_string());
            report.violated()
        }
    }
}

/// Dual of generalized Fisher: an incomplete pairwise balanced design has
/// `v <= b`, because its dual is a simple constant-intersect family of `v`
/// blocks on `b` points.
pub fn fisher_dual(s: &IncidenceSystem) -> FisherReport {
    let mut report = FisherReport::new(FisherVariant::Dual, s);
    let class = s.classify();

    let mut ok = report.check("at least two points", s.v() >= 2, format!("v = {}", s.v()));
    ok &= match class.pbd_lambda {
        Some(lambda) => report.check("pairwise balanced", true, format!("λ = {lambda}")),
        None => report.check("pairwise balanced", false, "pair index not a constant λ ≥ 1"),
    };
    ok &= match s.blocks().iter().position(|blk| blk.len() >= s.v()) {
        None => report.check("incomplete", true, "every block is a proper subset"),
        Some(j) => report.check("incomplete", false, format!("block {j} contains every point")),
    };
    if !ok {
        return report.violated();
    }

    let dual = s.dual();
    if !report.check("dual blocks distinct", dual.is_simple(), "no two points lie in exactly the same blocks") {
        return report.violated();
    }
    let inner = general_fisher(&dual);
    for h in &inner.hypotheses {
        report.hypotheses.push(Hypothesis::new(format!("dual: {}", h.name), h.passed, h.detail.clone()));
    }
    match (inner.verdict, inner.certificate) {
        (Verdict::BoundHolds, Some(cert)) => report.holds(cert),
        (verdict, _) => {
            report.check("dual bound established", false, format!("generalized Fisher on the dual: {verdict}"));
            report.violated()
        }
    }
}
