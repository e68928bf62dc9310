//! The acceptance suite, runnable from the binary. Each criterion checks
//! library results against an independent oracle (cofactor expansion,
//! brute-force counting, a naive powerset filter) and reports pass/fail
//! with a short detail line.
//!
//! `Quick` samples fewer random cases and smaller exhaustive ranges;
//! `Full` uses the complete acceptance parameters.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};
use std::{env, fs, process};

use designlab::algebra::det_ai_bj;
use designlab::enumerate::{enum_bibd, enum_const_intersect, enum_odd_town, verify_exhaustive, EnumerationReport, Theorem};
use designlab::incidence::Intersection;
use designlab::theorems::{fisher_dual, pbd_characterization_forward, pbd_characterization_reverse};
use designlab::{Block, Domain, ExactMatrix, FisherVariant, IncidenceSystem, Scalar, Verdict};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::commands::cmd_fisher;
use crate::format::{write_design, DesignFormat};
use crate::report::Payload;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Full => "full",
        })
    }
}

impl Level {
    fn trials(self, full: usize) -> usize {
        match self {
            Level::Quick => full / 5,
            Level::Full => full,
        }
    }
}

fn secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(rename = "wall_time_secs", serialize_with = "secs")]
    pub wall_time: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {} ({:.2}s)", self.id, self.name, self.detail, self.wall_time.as_secs_f64())
    }
}

pub const CRITERIA: [&str; 10] = [
    "uniform Fisher on the Fano plane",
    "exhaustive odd-town",
    "exhaustive generalized Fisher",
    "pairwise balanced characterization",
    "determinant invariance",
    "rank lemmas",
    "dual and complement identities",
    "matrix and set properties agree",
    "dual Fisher",
    "enumeration soundness",
];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub struct SelftestRun {
    pub criteria: Vec<CriterionResult>,
    /// Reports from the exhaustive criteria.
    pub exhaustive: Vec<EnumerationReport>,
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, level: Level) -> CriterionResult {
    run_criterion_collecting(id, level, &mut Vec::new())
}

fn run_criterion_collecting(id: usize, level: Level, reports: &mut Vec<EnumerationReport>) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => fano_uniform(),
        2 => exhaustive_odd_town(level, reports),
        3 => exhaustive_general(level, reports),
        4 => pbd_characterization(),
        5 => determinant_invariance(level),
        6 => rank_lemmas(level),
        7 => dual_complement(level),
        8 => property_bridge(level),
        9 => dual_fisher(),
        10 => enumeration_soundness(level),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        wall_time: start.elapsed(),
    }
}

pub fn run(level: Level) -> SelftestRun {
    let mut exhaustive = Vec::new();
    let criteria = (1..=CRITERIA.len()).map(|id| run_criterion_collecting(id, level, &mut exhaustive)).collect();
    SelftestRun { criteria, exhaustive }
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut total = BigInt::from(0);
    for (j, head) in m[0].iter().enumerate() {
        if *head == BigInt::from(0) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = head * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Systems with `v <= 6` and `b <= 6`; blocks may repeat or be empty.
pub fn random_system(rng: &mut impl Rng) -> IncidenceSystem {
    let v = rng.gen_range(0..=6usize);
    let b = rng.gen_range(0..=6usize);
    let blocks = (0..b)
        .map(|_| {
            let mask: u32 = rng.gen_range(0..1u32 << v);
            Block::new((0..v).filter(|&i| mask >> i & 1 == 1)).expect("distinct points")
        })
        .collect();
    IncidenceSystem::new(v, blocks).expect("points in range")
}

fn int(n: impl Into<BigInt>) -> Scalar {
    Scalar::Integer(n.into())
}

fn temp_path(tag: &str) -> PathBuf {
    let nanos = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_nanos());
    env::temp_dir().join(format!("designlab-selftest-{}-{nanos}-{tag}.json", process::id()))
}

fn fano_uniform() -> Outcome {
    let fano = IncidenceSystem::fano_plane();
    let path = temp_path("fano");
    fs::write(&path, write_design(&fano, DesignFormat::Json)).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let result = cmd_fisher(&path, None, FisherVariant::Uniform);
    let elapsed = start.elapsed();
    let _ = fs::remove_file(&path);
    let report = result.map_err(|e| e.to_string())?;
    ensure!(report.exit_code == 0, "exit code {}", report.exit_code);
    let Payload::Fisher(fisher) = report.payload else {
        return Err("payload is not a Fisher report".into());
    };
    ensure!(fisher.verdict == Verdict::BoundHolds, "verdict {}", fisher.verdict);
    let bound = fisher.bound.ok_or("no bound")?;
    ensure!((bound.lhs, bound.rhs) == (7, 7), "bound {bound}");
    let det = fisher.certificate.and_then(|c| c.square_det).ok_or("no determinant")?.to_bigint();

    // brute-force Gram matrix, then cofactor expansion
    let gram: Vec<Vec<BigInt>> = (0..7)
        .map(|x| {
            (0..7).map(|y| BigInt::from(fano.blocks().iter().filter(|b| b.contains(x) && b.contains(y)).count())).collect()
        })
        .collect();
    let oracle = cofactor_det(&gram);
    let closed = det_ai_bj(&int(2), &int(1), 7).map_err(|e| e.to_string())?;
    ensure!(oracle == BigInt::from(576), "cofactor oracle gives {oracle}");
    ensure!(det.as_ref() == Some(&oracle), "det(N·Nᵀ) = {det:?}, oracle {oracle}");
    ensure!(closed == int(oracle.clone()), "det(2I + J) closed form gives {closed}");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("{bound}, det(N·Nᵀ) = {oracle} = det(2I + J)"))
}

fn exhaustive(
    theorem: Theorem,
    vs: std::ops::RangeInclusive<usize>,
    budget: Duration,
    reports: &mut Vec<EnumerationReport>,
) -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    for v in vs.clone() {
        let r = verify_exhaustive(theorem, v).map_err(|e| e.to_string())?;
        ensure!(r.is_clean(), "v = {v}: {}", r.violations.join("; "));
        ensure!(
            r.bounds_certified == r.instances_checked,
            "v = {v}: {} of {} instances certified",
            r.bounds_certified,
            r.instances_checked
        );
        ensure!(r.max_family_size_found <= v, "v = {v}: family of size {}", r.max_family_size_found);
        instances += r.instances_checked;
        reports.push(r);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < budget, "took {elapsed:?}, budget {budget:?}");
    Ok(format!("v = {}..{}: {instances} instances, all certified, 0 violations", vs.start(), vs.end()))
}

fn exhaustive_odd_town(level: Level, reports: &mut Vec<EnumerationReport>) -> Outcome {
    let top = if level == Level::Full { 6 } else { 4 };
    exhaustive(Theorem::OddTown, 1..=top, Duration::from_secs(120), reports)
}

fn exhaustive_general(level: Level, reports: &mut Vec<EnumerationReport>) -> Outcome {
    let top = if level == Level::Full { 5 } else { 4 };
    exhaustive(Theorem::GeneralFisher, 2..=top, Duration::from_secs(300), reports)
}

fn pbd_characterization() -> Outcome {
    let fano = IncidenceSystem::fano_plane();
    let (r, lambda) = pbd_characterization_reverse(&fano).map_err(|e| e.to_string())?;
    ensure!((r, lambda) == (3, 1), "reverse gives ({r}, {lambda})");
    let n = fano.incidence_matrix(Domain::Integer);
    let m = n.matrix();
    let gram = m.mul(&m.transpose()).map_err(|e| e.to_string())?;
    for i in 0..7 {
        for j in 0..7 {
            let expected = lambda + if i == j { r - lambda } else { 0 };
            ensure!(gram.get(i, j) == &int(expected), "N·Nᵀ[{i}][{j}] = {}", gram.get(i, j));
        }
    }
    let back = pbd_characterization_forward(&n, r, lambda).map_err(|e| e.to_string())?;
    let class = back.classify();
    ensure!(back == fano, "forward direction rebuilt a different system");
    ensure!(class.regular_r == Some(3) && class.pbd_lambda == Some(1), "classified as {class:?}");
    Ok("(r, λ) = (3, 1); N·Nᵀ = J + 2I entrywise; forward rebuilds a regular PBD".into())
}

fn random_square(rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=6);
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect()
}

fn determinant_invariance(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = level.trials(1000);
    for t in 0..trials {
        let rows = random_square(&mut rng);
        let a = ExactMatrix::from_rows(Domain::Integer, &rows).map_err(|e| e.to_string())?;
        let n = rows.len();
        let c = rng.gen_range(-5i64..=5);
        let k = rng.gen_range(0..n);
        let others: Vec<usize> = (0..n).filter(|&i| i != k && rng.gen_bool(0.5)).collect();
        let op = rng.gen_range(0..4);
        let out = match op {
            0 => a.add_multiple_rows(c, k, &others),
            1 => a.add_row_to_multiple(c, &others, k),
            2 => a.add_multiple_cols(c, k, &others),
            _ => a.add_col_to_multiple(c, &others, k),
        }
        .map_err(|e| e.to_string())?;
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let oracle = int(cofactor_det(&big));
        let before = a.det_bareiss().map_err(|e| e.to_string())?;
        let after = out.det_bareiss().map_err(|e| e.to_string())?;
        ensure!(before == oracle, "trial {t}: Bareiss {before} vs cofactor {oracle}");
        ensure!(after == before, "trial {t}: operation {op} changed det from {before} to {after}");
    }
    Ok(format!("{trials} trials, determinant unchanged and equal to cofactor expansion"))
}

fn random_matrix(rng: &mut impl Rng, domain: Domain, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::build(rows, cols, domain, |_, _| {
        let num = rng.gen_range(-4i64..=4);
        match domain {
            Domain::Rational => (num, rng.gen_range(1i64..=3)),
            _ => (num, 1),
        }
    })
    .expect("entries are valid")
}

fn rank_lemmas(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let trials = level.trials(1000);
    for domain in [Domain::Rational, Domain::prime_field(5).expect("5 is prime")] {
        for t in 0..trials {
            let (m, k, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(1..=5));
            let a = random_matrix(&mut rng, domain, m, k);
            let b = random_matrix(&mut rng, domain, k, n);
            let ab = a.mul(&b).map_err(|e| e.to_string())?;
            let rank = |x: &ExactMatrix| x.rank_field().map_err(|e| e.to_string());
            let (ra, rb, rab) = (rank(&a)?, rank(&b)?, rank(&ab)?);
            ensure!(rab <= ra.min(rb), "{domain} trial {t}: rank(AB) = {rab}, ranks {ra}, {rb}");
            ensure!(ra <= m.min(k) && rb <= k.min(n), "{domain} trial {t}: rank exceeds dimensions");
        }
    }
    Ok(format!("{trials} pairs each over ℚ and GF(5), no violations"))
}

fn dual_complement(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = level.trials(500);
    for t in 0..trials {
        let s = random_system(&mut rng);
        let n = s.incidence_matrix(Domain::Integer).into_matrix();
        let dual = s.dual();
        ensure!(
            dual.incidence_matrix(Domain::Integer).into_matrix() == n.transpose(),
            "trial {t}: dual matrix is not the transpose for {s}"
        );
        let c = s.complement().incidence_matrix(Domain::Integer).into_matrix();
        let j_minus_n = ExactMatrix::ones(s.v(), s.b(), Domain::Integer).sub(&n).map_err(|e| e.to_string())?;
        ensure!(c == j_minus_n, "trial {t}: complement matrix is not J − N for {s}");
        for j in 0..s.b() {
            ensure!(
                dual.replication_number(j).ok() == s.block_size(j).ok(),
                "trial {t}: replication of dual point {j} differs from block size"
            );
        }
        for x in 0..s.v() {
            ensure!(
                dual.block_size(x).ok() == s.replication_number(x).ok(),
                "trial {t}: size of dual block {x} differs from replication"
            );
        }
    }
    let mut families = 0;
    for v in 1..=4 {
        for family in enum_const_intersect(v).map_err(|e| e.to_string())? {
            let k = match family.classify().const_intersect {
                Intersection::Constant(k) => k,
                other => return Err(format!("{family}: intersection {other:?}")),
            };
            let lambda = family.dual().classify().pbd_lambda;
            ensure!(lambda == Some(k), "{family}: dual λ {lambda:?}, expected {k}");
            families += 1;
        }
    }
    Ok(format!("{trials} random systems; {families} constant-intersect duals are PBDs with λ = k"))
}

fn property_bridge(level: Level) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trials = level.trials(500);
    let e = |e: designlab::IncidenceError| e.to_string();
    for t in 0..trials {
        let s = random_system(&mut rng);
        let n = s.incidence_matrix(Domain::Integer);
        let lifts = [n.lift(Domain::Rational), n.lift(Domain::gf2())];
        for lifted in &lifts {
            ensure!(lifted.to_system() == s, "trial {t}: lifting to {} changed the pattern", lifted.domain());
        }
        for m in std::iter::once(&n).chain(&lifts) {
            for x in 0..s.v() {
                let set_count = s.blocks().iter().filter(|b| b.contains(x)).count();
                ensure!(s.replication_number(x).map_err(e)? == set_count, "trial {t}: replication of {x}");
                ensure!(m.mat_rep_num(x).map_err(e)? == set_count, "trial {t}: row sum {x} over {}", m.domain());
                for y in x + 1..s.v() {
                    let pair = s.blocks().iter().filter(|b| b.contains(x) && b.contains(y)).count();
                    ensure!(s.points_index(&[x, y]).map_err(e)? == pair, "trial {t}: index of ({x},{y})");
                    ensure!(
                        m.mat_point_index(&[x, y]).map_err(e)? == pair,
                        "trial {t}: matrix index of ({x},{y}) over {}",
                        m.domain()
                    );
                }
            }
            for i in 0..s.b() {
                let size = s.blocks()[i].points().len();
                ensure!(s.block_size(i).map_err(e)? == size, "trial {t}: size of block {i}");
                ensure!(m.mat_block_size(i).map_err(e)? == size, "trial {t}: column sum {i} over {}", m.domain());
                for j in 0..s.b() {
                    let common = s.blocks()[i].points().iter().filter(|&&p| s.blocks()[j].contains(p)).count();
                    ensure!(s.inter_num(i, j).map_err(e)? == common, "trial {t}: intersection ({i},{j})");
                    ensure!(
                        m.mat_inter_num(i, j).map_err(e)? == common,
                        "trial {t}: matrix intersection ({i},{j}) over {}",
                        m.domain()
                    );
                }
            }
        }
    }
    Ok(format!("{trials} random systems over ℤ, ℚ and GF(2)"))
}

fn dual_fisher() -> Outcome {
    let fano = IncidenceSystem::fano_plane();
    let sts9 = enum_bibd(9, 3, 1, 1).map_err(|e| e.to_string())?.into_iter().next().ok_or("no (9,3,1) design found")?;
    let class = sts9.classify();
    ensure!(
        class.is_bibd && class.uniform_k == Some(3) && class.pbd_lambda == Some(1) && sts9.b() == 12,
        "(9,3,1) search returned {sts9}"
    );
    let mut shown = Vec::new();
    for (s, expected) in [(&fano, (7, 7)), (&sts9, (9, 12))] {
        let report = fisher_dual(s);
        ensure!(report.verdict == Verdict::BoundHolds, "{s}: verdict {}", report.verdict);
        report.revalidate(s)?;
        let bound = report.bound.ok_or("no bound")?;
        ensure!((bound.lhs, bound.rhs) == expected, "{s}: bound {bound}");
        shown.push(bound.to_string());
    }
    Ok(shown.join(", "))
}

/// Every family of nonempty subsets of `0..v` passing `keep`, with blocks
/// as sorted point lists.
fn naive_families(v: usize, keep: impl Fn(&[u32]) -> bool) -> BTreeSet<Vec<Vec<usize>>> {
    let nonempty: Vec<u32> = (1..1u32 << v).collect();
    let mut out = BTreeSet::new();
    for pick in 0u64..1 << nonempty.len() {
        let family: Vec<u32> = (0..nonempty.len()).filter(|&i| pick >> i & 1 == 1).map(|i| nonempty[i]).collect();
        if keep(&family) {
            let mut blocks: Vec<Vec<usize>> =
                family.iter().map(|&m| (0..v).filter(|&i| m >> i & 1 == 1).collect()).collect();
            blocks.sort();
            out.insert(blocks);
        }
    }
    out
}

fn pairs(family: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    (0..family.len()).flat_map(move |i| (i + 1..family.len()).map(move |j| (family[i], family[j])))
}

fn odd_town_filter(family: &[u32]) -> bool {
    family.iter().all(|m| m.count_ones() % 2 == 1) && pairs(family).all(|(a, b)| (a & b).count_ones() % 2 == 0)
}

fn const_intersect_filter(family: &[u32]) -> bool {
    if family.len() < 2 {
        return false;
    }
    let k = (family[0] & family[1]).count_ones();
    k >= 1 && pairs(family).all(|(a, b)| (a & b).count_ones() == k)
}

fn collect_unique(stream: impl Iterator<Item = IncidenceSystem>) -> Result<BTreeSet<Vec<Vec<usize>>>, String> {
    let mut out = BTreeSet::new();
    for s in stream {
        let mut blocks: Vec<Vec<usize>> = s.blocks().iter().map(|b| b.points().to_vec()).collect();
        blocks.sort();
        if !out.insert(blocks) {
            return Err(format!("duplicate family {s}"));
        }
    }
    Ok(out)
}

fn enumeration_soundness(level: Level) -> Outcome {
    let top = if level == Level::Full { 4 } else { 3 };
    let mut counts = Vec::new();
    for v in 0..=top {
        let odd = collect_unique(enum_odd_town(v).map_err(|e| e.to_string())?)?;
        ensure!(odd == naive_families(v, odd_town_filter), "odd-town v = {v} differs from the naive filter");
        let ci = collect_unique(enum_const_intersect(v).map_err(|e| e.to_string())?)?;
        ensure!(
            ci == naive_families(v, const_intersect_filter),
            "const-intersect v = {v} differs from the naive filter"
        );
        counts.push(format!("v={v}: {}/{}", odd.len(), ci.len()));
    }
    Ok(format!("odd-town/const-intersect families match, {}", counts.join(", ")))
}
