use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::incidence::{IncidenceSystem, Intersection};
use crate::theorems::{fisher_dual, general_fisher, odd_town, Verdict};

use super::{enum_const_intersect, enum_odd_town, EnumerateError, FamilyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    OddTown,
    GeneralFisher,
    DualFisher,
}

impl Theorem {
    pub fn family(self) -> FamilyKind {
        match self {
            Theorem::OddTown => FamilyKind::OddTown,
            Theorem::GeneralFisher | Theorem::DualFisher => FamilyKind::ConstIntersect,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::OddTown => "odd-town",
            Theorem::GeneralFisher => "general-fisher",
            Theorem::DualFisher => "dual-fisher",
        })
    }
}

fn secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub theorem: Theorem,
    pub family_kind: FamilyKind,
    pub v: usize,
    pub instances_checked: usize,
    /// Instances on which the checker's hypotheses held and a bound was
    /// certified.
    pub bounds_certified: usize,
    pub max_family_size_found: usize,
    pub violations: Vec<String>,
    #[serde(rename = "wall_time_secs", serialize_with = "secs")]
    pub wall_time: Duration,
}

impl EnumerationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-instance outcome: certified?, violation text.
type Outcome = (bool, Option<String>);

fn check_odd_town(s: &IncidenceSystem) -> Outcome {
    let report = odd_town(s);
    if report.verdict != Verdict::BoundHolds {
        return (false, Some(format!("{s}: odd-town verdict {}", report.verdict)));
    }
    if let Err(e) = report.revalidate(s) {
        return (false, Some(format!("{s}: certificate rejected: {e}")));
    }
    let rank = report.certificate.as_ref().map(|c| c.rank_value);
    if rank != Some(s.b()) {
        return (false, Some(format!("{s}: GF(2) rank {rank:?} differs from family size {}", s.b())));
    }
    (true, None)
}

fn check_general(s: &IncidenceSystem) -> Outcome {
    let report = general_fisher(s);
    if report.verdict != Verdict::BoundHolds {
        return (false, Some(format!("{s}: generalized Fisher verdict {}", report.verdict)));
    }
    match report.revalidate(s) {
        Ok(()) => (true, None),
        Err(e) => (false, Some(format!("{s}: certificate rejected: {e}"))),
    }
}

/// The family's dual is a pairwise balanced design with `λ` equal to the
/// family's intersection number; whenever it is also incomplete the dual
/// bound must be certified.
fn check_dual(family: &IncidenceSystem) -> Outcome {
    let k = match family.classify().const_intersect {
        Intersection::Constant(k) => k,
        other => return (false, Some(format!("{family}: enumerated family has intersection {other:?}"))),
    };
    let design = family.dual();
    let class = design.classify();
    if class.pbd_lambda != Some(k) {
        return (false, Some(format!("{family}: dual has λ {:?}, expected {k}", class.pbd_lambda)));
    }
    let report = fisher_dual(&design);
    if let Err(e) = report.revalidate(&design) {
        return (false, Some(format!("{design}: dual Fisher report rejected: {e}")));
    }
    let applicable = class.is_incomplete;
    match (applicable, report.verdict) {
        (true, Verdict::BoundHolds) => (true, None),
        (false, Verdict::HypothesesViolated) => (false, None),
        (_, verdict) => (false, Some(format!("{design}: dual Fisher verdict {verdict} (incomplete: {applicable})"))),
    }
}

/// Runs a theorem checker on every enumerated instance for `v`, in
/// parallel, and collects anything that contradicts the theorem.
///
/// Dual Fisher is exercised on the duals of the constant-intersect
/// families.
pub fn verify_exhaustive(theorem: Theorem, v: usize) -> Result<EnumerationReport, EnumerateError> {
    let start = Instant::now();
    let (stream, check): (_, fn(&IncidenceSystem) -> Outcome) = match theorem {
        Theorem::OddTown => (enum_odd_town(v)?, check_odd_town),
        Theorem::GeneralFisher => (enum_const_intersect(v)?, check_general),
        Theorem::DualFisher => (enum_const_intersect(v)?, check_dual),
    };
    let (instances, certified, max_size, mut violations) = stream
        .par_bridge()
        .map(|s| {
            let (ok, violation) = check(&s);
            (1usize, usize::from(ok), s.b(), violation.into_iter().collect::<Vec<_>>())
        })
        .reduce(
            || (0, 0, 0, Vec::new()),
            |mut a, b| {
                a.3.extend(b.3);
                (a.0 + b.0, a.1 + b.1, a.2.max(b.2), a.3)
            },
        );
    violations.sort();
    Ok(EnumerationReport {
        theorem,
        family_kind: theorem.family(),
        v,
        instances_checked: instances,
        bounds_certified: certified,
        max_family_size_found: max_size,
        violations,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_town_zero_is_the_empty_family() {
        let r = verify_exhaustive(Theorem::OddTown, 0).unwrap();
        assert_eq!(r.instances_checked, 1);
        assert_eq!(r.max_family_size_found, 0);
        assert!(r.is_clean());
    }

    #[test]
    fn small_runs_are_clean() {
        for v in 1..=4 {
            let r = verify_exhaustive(Theorem::OddTown, v).unwrap();
            assert!(r.is_clean(), "{:?}", r.violations);
            assert_eq!(r.max_family_size_found, v);
            let r = verify_exhaustive(Theorem::GeneralFisher, v).unwrap();
            assert!(r.is_clean(), "{:?}", r.violations);
            assert_eq!(r.bounds_certified, r.instances_checked);
            let r = verify_exhaustive(Theorem::DualFisher, v).unwrap();
            assert!(r.is_clean(), "{:?}", r.violations);
        }
    }

    #[test]
    fn bound_errors_propagate() {
        assert!(verify_exhaustive(Theorem::OddTown, 7).is_err());
        assert!(verify_exhaustive(Theorem::GeneralFisher, 6).is_err());
    }
}
