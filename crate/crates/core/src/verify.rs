//! Verification suites comparing the closed formulas against the
//! finite-field oracles, and the quick self-test run by the binary.

use std::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{centralizer_class, kappa, motive_class};
use crate::error::{Error, Result};
use crate::fflab::charsum::{charsum_fiber_identity, charsum_linear_lemma, fourier_inversion_check, AffineFamily};
use crate::fflab::count::{count_moment_fiber, gl_order, gl_order_brute, group_order, CountMethod};
use crate::fflab::{centralizer_order, kappa_oracle, Fp, RepSpace};
use crate::motivic::{LRat, Poly};
use crate::partition::{pairing, partitions_of, tuples_with_sizes, Partition, PartitionTuple};
use crate::quiver::{DimVector, Quiver};
use crate::series::{exponents_up_to, MSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    /// A fiber-count mismatch at a characteristic `p <= |v|`, where the
    /// moment-map quotient need not be free.
    Flag,
    Skip,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Flag => "FLAG",
            Status::Skip => "SKIP",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub suite: &'static str,
    pub case: String,
    pub status: Status,
    pub detail: String,
}

impl CaseReport {
    fn new(suite: &'static str, case: String, status: Status, detail: String) -> Self {
        Self {
            suite,
            case,
            status,
            detail,
        }
    }

    fn compare(suite: &'static str, case: String, expected: impl fmt::Display, got: impl fmt::Display) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        let status = if expected == got { Status::Pass } else { Status::Fail };
        Self::new(suite, case, status, format!("formula {expected}, oracle {got}"))
    }

    fn error(suite: &'static str, case: String, err: &Error) -> Self {
        let status = match err {
            Error::BudgetExceeded { .. } | Error::OracleRange(_) => Status::Skip,
            _ => Status::Fail,
        };
        Self::new(suite, case, status, err.to_string())
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {:<12} {:<40} {}", self.status, self.suite, self.case, self.detail)
    }
}

/// Which oracle cases to run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Quiver and framing for `ffcount` and `kappa`; `None` runs the
    /// built-in corpus.
    pub target: Option<(Quiver, DimVector)>,
    /// A single dimension vector for `ffcount`; otherwise every nonzero `v`
    /// with `|v| <= max_degree`.
    pub v: Option<DimVector>,
    pub max_degree: u32,
    pub qs: Vec<u32>,
    pub alpha: i64,
    pub budget: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            target: None,
            v: None,
            max_degree: 2,
            qs: vec![2, 3],
            alpha: 1,
            budget: crate::fflab::DEFAULT_BUDGET,
        }
    }
}

pub const SUITES: [&str; 4] = ["ffcount", "centralizer", "kappa", "harmonic"];

/// Runs a suite by name (one of [`SUITES`] or `all`); `None` for an unknown
/// name.
pub fn run_suite(name: &str, config: &VerifyConfig) -> Option<Vec<CaseReport>> {
    match name {
        "ffcount" => Some(ffcount_suite(config)),
        "centralizer" => Some(centralizer_suite(config)),
        "kappa" => Some(kappa_suite(config)),
        "harmonic" => Some(harmonic_suite(config)),
        "all" => Some(SUITES.iter().flat_map(|s| run_suite(s, config).expect("known suite")).collect()),
        _ => None,
    }
}

fn eval_integer(class: &LRat, q: u32) -> Result<BigInt> {
    let value = class.eval_at(i64::from(q))?;
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Spec(format!("{class} at q = {q} is not an integer")))
    }
}

/// Compares `eval(class, q) · |G_v(F_q)|` against the fiber count at level
/// `α·1_v`.
pub fn ffcount_case(q: &Quiver, v: &DimVector, w: &DimVector, p: u32, alpha: i64, budget: u128) -> CaseReport {
    let case = format!("v={v} w={w} q={p} alpha={alpha}");
    let run = || -> Result<(BigInt, u128)> {
        let f = Fp::new(p)?;
        let space = RepSpace::new(q, v, w, f)?;
        let count = count_moment_fiber(&space, f.from_i64(alpha), CountMethod::Fiberwise, budget)?;
        let class = motive_class(q, v, w)?.class_lrat();
        Ok((eval_integer(&class, p)? * BigInt::from(group_order(&space)), count))
    };
    match run() {
        Ok((expected, got)) => {
            let detail = format!("eval*|G_v| {expected}, fiber count {got}");
            let status = if expected == BigInt::from(got) {
                Status::Pass
            } else if p <= v.total() {
                Status::Flag
            } else {
                Status::Fail
            };
            CaseReport::new("ffcount", case, status, detail)
        }
        Err(e) => CaseReport::error("ffcount", case, &e),
    }
}

fn ffcount_corpus() -> Vec<(Quiver, DimVector)> {
    vec![
        (Quiver::jordan(), DimVector(vec![1])),
        (Quiver::single_vertex(), DimVector(vec![2])),
        (Quiver::a2(), DimVector(vec![1, 0])),
    ]
}

fn ffcount_suite(config: &VerifyConfig) -> Vec<CaseReport> {
    let targets = config.target.clone().map_or_else(ffcount_corpus, |t| vec![t]);
    let mut out = Vec::new();
    for (q, w) in targets {
        let vs: Vec<DimVector> = match &config.v {
            Some(v) => vec![v.clone()],
            None => exponents_up_to(q.vertex_count(), config.max_degree)
                .into_iter()
                .filter(|e| e.iter().any(|&x| x > 0))
                .map(DimVector)
                .collect(),
        };
        for v in &vs {
            for &p in &config.qs {
                out.push(ffcount_case(&q, v, &w, p, config.alpha, config.budget));
            }
        }
    }
    out
}

fn centralizer_suite(config: &VerifyConfig) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for n in 1..=crate::fflab::centralizer::MAX_CENTRALIZER_SIZE {
        for lambda in partitions_of(n) {
            for &q in &config.qs {
                out.push(centralizer_case(&lambda, q));
            }
        }
    }
    out
}

pub fn centralizer_case(lambda: &Partition, q: u32) -> CaseReport {
    let case = format!("lambda={lambda} q={q}");
    let run = || -> Result<(BigInt, u128)> {
        let got = centralizer_order(lambda, q)?;
        let class = centralizer_class(&PartitionTuple::new(vec![lambda.clone()]));
        Ok((eval_integer(&class, q)?, got))
    };
    match run() {
        Ok((expected, got)) => CaseReport::compare("centralizer", case, expected, got),
        Err(e) => CaseReport::error("centralizer", case, &e),
    }
}

/// Jordan with `w ∈ {0, 1, 2}` and `A_2` with `w ∈ {(0,0), (1,0), (1,1)}`.
pub fn kappa_corpus() -> Vec<(Quiver, DimVector)> {
    let mut out: Vec<_> = (0..=2).map(|w| (Quiver::jordan(), DimVector(vec![w]))).collect();
    for w in [[0, 0], [1, 0], [1, 1]] {
        out.push((Quiver::a2(), DimVector(w.to_vec())));
    }
    out
}

pub fn kappa_case(q: &Quiver, w: &DimVector, tuple: &PartitionTuple) -> CaseReport {
    let case = format!("w={w} lambda={tuple}");
    match (kappa(q, w, tuple), kappa_oracle(q, w, tuple)) {
        (Ok(a), Ok(b)) => CaseReport::compare("kappa", case, a, b),
        (Err(e), _) | (_, Err(e)) => CaseReport::error("kappa", case, &e),
    }
}

fn kappa_suite(config: &VerifyConfig) -> Vec<CaseReport> {
    let targets = config.target.clone().map_or_else(kappa_corpus, |t| vec![t]);
    let mut out = Vec::new();
    for (q, w) in targets {
        for sizes in exponents_up_to(q.vertex_count(), crate::fflab::kappa::MAX_KAPPA_SIZE) {
            for tuple in tuples_with_sizes(&sizes) {
                out.push(kappa_case(&q, &w, &tuple));
            }
        }
    }
    out
}

/// `(quiver, v, w)` for the fiber character-sum identity.
pub fn charsum_fiber_corpus() -> Vec<(Quiver, DimVector, DimVector)> {
    vec![
        (Quiver::jordan(), DimVector(vec![1]), DimVector(vec![0])),
        (Quiver::jordan(), DimVector(vec![1]), DimVector(vec![1])),
        (Quiver::single_vertex(), DimVector(vec![1]), DimVector(vec![1])),
        (Quiver::a2(), DimVector(vec![1, 1]), DimVector(vec![1, 0])),
    ]
}

fn boolean_case(case: String, holds: Result<bool>) -> CaseReport {
    match holds {
        Ok(true) => CaseReport::new("harmonic", case, Status::Pass, "exact".into()),
        Ok(false) => CaseReport::new("harmonic", case, Status::Fail, "identity violated".into()),
        Err(e) => CaseReport::error("harmonic", case, &e),
    }
}

fn harmonic_suite(config: &VerifyConfig) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for &p in &config.qs {
        let Ok(f) = Fp::new(p) else {
            out.push(CaseReport::new("harmonic", format!("q={p}"), Status::Skip, "not prime".into()));
            continue;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p));
        for n in 1..=3 {
            let families: Vec<AffineFamily> = (0..=2)
                .flat_map(|m| (0..5).map(move |_| (n, m)))
                .map(|(n, m)| AffineFamily::random(n, m, p, &mut rng))
                .collect();
            let holds = families.iter().all(|fam| charsum_linear_lemma(fam, f));
            out.push(boolean_case(format!("linear lemma n={n} q={p}"), Ok(holds)));
        }
        for n in 1..=2 {
            out.push(boolean_case(
                format!("fourier inversion n={n} q={p}"),
                Ok(fourier_inversion_check(n, f, 100, u64::from(p) * 10 + n as u64)),
            ));
        }
        for (q, v, w) in charsum_fiber_corpus() {
            for alpha in [0, config.alpha] {
                let level = f.from_i64(alpha);
                let holds = RepSpace::new(&q, &v, &w, f).and_then(|s| charsum_fiber_identity(&s, level, config.budget));
                out.push(boolean_case(format!("fiber v={v} w={w} alpha={alpha} q={p}"), holds));
            }
        }
    }
    out
}

/// Faults the self-test can be asked to plant, to show it catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Off-by-one partition pairing on the diagonal.
    Pairing,
}

/// The first invariant that failed, with a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestFailure {
    pub invariant: &'static str,
    pub counterexample: String,
}

fn check(invariant: &'static str, ok: bool, counterexample: impl FnOnce() -> String) -> std::result::Result<(), SelftestFailure> {
    if ok {
        Ok(())
    } else {
        Err(SelftestFailure {
            invariant,
            counterexample: counterexample(),
        })
    }
}

fn young_conjugate(l: &Partition) -> Vec<u32> {
    let first = l.parts().first().copied().unwrap_or(0);
    (1..=first).map(|k| l.parts().iter().filter(|&&x| x >= k).count() as u32).collect()
}

/// Runs the invariant checks, reporting each one through `log`. `fast`
/// keeps every check to a few milliseconds.
pub fn selftest(
    fast: bool,
    fault: Option<Fault>,
    mut log: impl FnMut(&str),
) -> std::result::Result<(), SelftestFailure> {
    let to_err = |invariant: &'static str| move |e: Error| SelftestFailure {
        invariant,
        counterexample: e.to_string(),
    };
    let pair = |a: &Partition, b: &Partition| {
        let base = pairing(a, b);
        match fault {
            Some(Fault::Pairing) if a == b && !a.is_empty() => base + 1,
            _ => base,
        }
    };

    let max = if fast { 5 } else { 8 };
    for n in 0..=max {
        for a in partitions_of(n) {
            for m in 0..=max - n {
                for b in partitions_of(m) {
                    let (ca, cb) = (young_conjugate(&a), young_conjugate(&b));
                    let dot: u64 = ca.iter().zip(&cb).map(|(&x, &y)| u64::from(x) * u64::from(y)).sum();
                    check("partition pairing equals conjugate dot product", pair(&a, &b) == dot, || {
                        format!("<{a}, {b}> = {}, conjugate dot product {dot}", pair(&a, &b))
                    })?;
                    check("partition pairing is symmetric", pair(&a, &b) == pair(&b, &a), || format!("{a}, {b}"))?;
                }
            }
        }
    }
    log("partition pairing: ok");

    for n in 0..=3u32 {
        for p in [2u32, 3] {
            if !fast || n <= 2 {
                let brute = gl_order_brute(n as usize, Fp::new(p).expect("prime"), 1 << 26)
                    .map_err(to_err("GL_n order"))?;
                check("GL_n order", brute == gl_order(n, p), || format!("n={n} q={p}"))?;
            }
            let class = eval_integer(&LRat::gl_class(n), p).map_err(to_err("GL_n class evaluation"))?;
            check("GL_n class evaluation", class == BigInt::from(gl_order(n, p)), || {
                format!("n={n} q={p}: {class}")
            })?;
        }
    }
    log("general linear group orders: ok");

    let series = MSeries::from_terms(
        2,
        4,
        [
            (vec![0, 0], LRat::one()),
            (vec![1, 0], LRat::l()),
            (vec![0, 1], LRat::from_int(-2)),
            (vec![1, 1], LRat::gl_class(2)),
        ],
    );
    let roundtrip = series
        .invert()
        .and_then(|inv| inv.invert())
        .map_err(to_err("series double inverse"))?;
    check("series double inverse", roundtrip == series, || format!("{series:?}"))?;
    log("series inversion: ok");

    for n in 1..=(if fast { 3 } else { 5 }) {
        let expected: Poly = partitions_of(n)
            .iter()
            .map(|l| Poly::monomial(BigInt::from(1), (n + l.length()) as usize))
            .fold(Poly::zero(), |acc, x| &acc + &x);
        let got = motive_class(&Quiver::jordan(), &DimVector(vec![n]), &DimVector(vec![1]))
            .map_err(to_err("Hilbert scheme classes"))?
            .class();
        check("Hilbert scheme classes", got == expected, || format!("n={n}: {got} vs {expected}"))?;
    }
    log("Hilbert scheme classes: ok");

    let sizes = if fast { 3 } else { 4 };
    for n in 1..=sizes {
        for l in partitions_of(n) {
            for q in [2, 3] {
                if fast && n == 3 && q == 3 {
                    continue;
                }
                let report = centralizer_case(&l, q);
                check("centralizer order", report.status == Status::Pass, || report.to_string())?;
            }
        }
    }
    log("centralizer orders: ok");

    for (q, w) in kappa_corpus() {
        for sizes in exponents_up_to(q.vertex_count(), if fast { 3 } else { 5 }) {
            for tuple in tuples_with_sizes(&sizes) {
                let report = kappa_case(&q, &w, &tuple);
                check("kernel rank", report.status == Status::Pass, || report.to_string())?;
            }
        }
    }
    log("kernel ranks: ok");

    let qs: &[u32] = if fast { &[2, 3] } else { &[2, 3, 5] };
    for &p in qs {
        let report = ffcount_case(&Quiver::jordan(), &DimVector(vec![1]), &DimVector(vec![1]), p, 1, 1 << 26);
        check("fiber count", report.status == Status::Pass, || report.to_string())?;
    }
    let config = VerifyConfig {
        qs: qs.to_vec(),
        ..VerifyConfig::default()
    };
    for report in harmonic_suite(&config) {
        check("character sums", report.status == Status::Pass, || report.to_string())?;
    }
    log("fiber counts and character sums: ok");

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_selftest_passes() {
        let mut lines = Vec::new();
        selftest(true, None, |l| lines.push(l.to_string())).unwrap();
        assert!(lines.len() >= 5);
    }

    #[test]
    fn injected_pairing_fault_is_caught() {
        let err = selftest(true, Some(Fault::Pairing), |_| {}).unwrap_err();
        assert!(err.invariant.contains("pairing"), "{err:?}");
    }

    #[test]
    fn small_characteristic_is_flagged() {
        let r = ffcount_case(&Quiver::jordan(), &DimVector(vec![2]), &DimVector(vec![1]), 2, 1, 1 << 26);
        assert_eq!(r.status, Status::Flag, "{r}");
        let r = ffcount_case(&Quiver::jordan(), &DimVector(vec![2]), &DimVector(vec![1]), 3, 1, 1 << 26);
        assert_eq!(r.status, Status::Pass, "{r}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &VerifyConfig::default()).is_none());
    }
}
