//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when a
//! criterion fails for any reason other than the documented so(m,2) split
//! rank deviation.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jakobsen::classifier::{classify, condition_a_steps, lambda_s, lambda_s_table, ClassificationResult};
use jakobsen::hwv::verify_catalog;
use jakobsen::jakobsen_diagram::build_diagram;
use jakobsen::rational::{frac, q, Q};
use jakobsen::shapovalov_oracle::{concordance, SmallAlgebra, SmallFamily};
use jakobsen::{Family, Labels, RootSystem, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPLIT_RANK_BUDGET: Duration = Duration::from_secs(1);
const EXAMPLES_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_CONFIGS: usize = 200;
const ORACLE_DEGREE: u32 = 3;

struct Outcome {
    pass: bool,
    /// Failure that is understood and recorded; does not fail the run.
    known: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, known: false, detail }
    }
}

fn labels(pairs: &[(usize, u64)]) -> Labels {
    pairs.iter().copied().collect()
}

fn split_rank(f: Family) -> usize {
    let rs = RootSystem::build(f).unwrap();
    build_diagram(&rs).split_rank_sequence().len()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut so_bad = Vec::new();
    let mut check = |f: Family, want: usize| {
        let got = split_rank(f);
        checked += 1;
        if got != want {
            let msg = format!("{f}: {got} (stated {want})");
            if matches!(f, Family::SoOdd { .. } | Family::SoEven { .. }) {
                so_bad.push(msg);
            } else {
                bad.push(msg);
            }
        }
    };
    for p in 1..=10 {
        for qq in 1..=10 {
            check(Family::Su { p, q: qq }, p.min(qq));
        }
    }
    for n in 2..=10 {
        check(Family::Sp { n }, n);
        check(Family::SoStar { n }, n / 2);
    }
    for n in 1..=10 {
        check(Family::SoOdd { n }, 1);
    }
    for n in 3..=10 {
        check(Family::SoEven { n }, 1);
    }
    check(Family::E6, 2);
    check(Family::E7, 3);
    let elapsed = t.elapsed();
    let fast = elapsed < SPLIT_RANK_BUDGET;
    let pass = bad.is_empty() && so_bad.is_empty() && fast;
    let mut detail = format!("{checked} pairs in {elapsed:.2?} (budget {SPLIT_RANK_BUDGET:?})");
    if !bad.is_empty() {
        detail += &format!("; mismatches: {}", bad.join(", "));
    }
    if !so_bad.is_empty() {
        detail += &format!(
            "; so(m,2) has split rank 2 for m >= 3 ({} pairs, e.g. {}), matching so(3,2) = sp(2,R) and so(4,2) = su(2,2)",
            so_bad.len(),
            so_bad[0]
        );
    }
    Outcome {
        pass,
        known: bad.is_empty() && fast,
        detail,
    }
}

fn criterion_2() -> Outcome {
    let table = [
        (Family::Su { p: 2, q: 3 }, q(-1)),
        (Family::Sp { n: 3 }, frac(-1, 2)),
        (Family::SoStar { n: 4 }, q(-2)),
        (Family::E6, q(-3)),
        (Family::E7, q(-4)),
    ];
    let mut bad = Vec::new();
    for (f, want) in &table {
        if lambda_s_table(*f).ok().as_ref() != Some(want) {
            bad.push(format!("table {f}"));
        }
    }
    let mut fams = vec![Family::E6, Family::E7];
    for p in 1..=8 {
        for qq in 1..=8 {
            if p + qq <= 9 {
                fams.push(Family::Su { p, q: qq });
            }
        }
    }
    for n in 2..=8 {
        fams.push(Family::Sp { n });
        fams.push(Family::SoStar { n });
    }
    for f in &fams {
        let rs = RootSystem::build(*f).unwrap();
        if let Err(e) = lambda_s(&rs) {
            bad.push(format!("{f}: {e}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("5 table values, c_j cross-check on {} pairs{}", fams.len(), list(&bad)),
    )
}

fn list(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failures: {}", bad.join(", "))
    }
}

fn certified(rs: &RootSystem, l: &Labels, c: &ClassificationResult) -> bool {
    let l0 = rs.resolve_weight(l).unwrap();
    c.missing.iter().all(|m| {
        let Some(cert) = &m.certificate else { return false };
        let lam = &l0 + &rs.epsilon.scale(&m.lambda_q);
        let Some(steps) = condition_a_steps(rs, &lam, cert) else { return false };
        let sum = cert
            .iter()
            .zip(&steps)
            .fold(Vector::zero(rs.dim), |acc, (a, n)| &acc + &a.scale(n));
        sum == m.omega && steps.iter().fold(Q::from_integer(0.into()), |a, b| a + b) == q(m.order as i64)
    })
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let cases: Vec<(&str, Family, Labels, Vec<Q>)> = vec![
        ("su(5,8)", Family::Su { p: 5, q: 8 }, labels(&[(5, 1), (8, 1)]), vec![q(-6), q(-7), q(-8)]),
        (
            "sp(10,R) I",
            Family::Sp { n: 10 },
            labels(&[(5, 2)]),
            vec![q(-5), frac(-11, 2), q(-6), frac(-13, 2), q(-7)],
        ),
        (
            "sp(10,R) II",
            Family::Sp { n: 10 },
            labels(&[(3, 1), (4, 1), (7, 2)]),
            vec![frac(-13, 2), q(-7), frac(-15, 2)],
        ),
        ("so*(16)", Family::SoStar { n: 8 }, labels(&[(6, 2), (7, 1)]), vec![q(-4), q(-6), q(-8)]),
        ("e6", Family::E6, labels(&[(6, 1)]), vec![q(-4), q(-7)]),
        ("e7", Family::E7, labels(&[(6, 1)]), vec![q(-8), q(-12)]),
    ];
    let mut bad = Vec::new();
    for (name, f, l, want) in &cases {
        let rs = RootSystem::build(*f).unwrap();
        let c = classify(&rs, l).unwrap();
        let got: Vec<Q> = c.missing.iter().map(|m| m.lambda_q.clone()).collect();
        let orders: Vec<u64> = c.missing.iter().map(|m| m.order).collect();
        if &got != want || orders != (1..=want.len() as u64).collect::<Vec<_>>() {
            bad.push(format!("{name}: got {}", got.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
        }
        if !certified(&rs, l, &c) {
            bad.push(format!("{name}: certificate"));
        }
        if *name == "so*(16)" {
            let skip = &c.missing[1].skipped;
            if skip.len() != 1 || c.missing[1].lambda_q != q(-6) {
                bad.push(format!("{name}: skip at -6"));
            }
        }
    }
    let elapsed = t.elapsed();
    let fast = elapsed < EXAMPLES_BUDGET;
    Outcome::new(
        bad.is_empty() && fast,
        format!("{} examples, certificates verified, {elapsed:.2?} (budget {EXAMPLES_BUDGET:?}){}", cases.len(), list(&bad)),
    )
}

fn criterion_4() -> Outcome {
    let mut fams = vec![Family::E6, Family::E7];
    for p in 1..=10 {
        for qq in 1..=10 {
            if p + qq <= 11 {
                fams.push(Family::Su { p, q: qq });
            }
        }
    }
    for n in 2..=10 {
        fams.push(Family::Sp { n });
        fams.push(Family::SoStar { n });
    }
    fams.extend((1..=10).map(|n| Family::SoOdd { n }));
    fams.extend((3..=10).map(|n| Family::SoEven { n }));
    let mut roots = 0;
    let mut bad = Vec::new();
    for f in &fams {
        let rs = RootSystem::build(*f).unwrap();
        for c in build_diagram(&rs).heights_pairing_check() {
            roots += 1;
            if !c.ok {
                bad.push(format!("{f} {}", c.root));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{roots} roots over {} pairs{}", fams.len(), list(&bad)))
}

/// λ0 and reduction level from the closed forms; `None` when the labels fall
/// outside the configurations they cover.
fn closed_form(f: Family, l: &Labels) -> Option<(Q, usize)> {
    let nz = |k: &usize| l.get(k).copied().unwrap_or(0) > 0;
    match f {
        Family::Su { p, q: qq } => {
            let n = p + qq;
            let t = (1..qq).filter(nz).max().unwrap_or(0);
            let s = (qq..n - 1).filter(nz).max().unwrap_or(qq - 1);
            let (i, j) = (n - s - 1, qq - t);
            Some((q(qq as i64 - t as i64 - s as i64 - 1), i.min(j)))
        }
        Family::Sp { n } => {
            let ks: Vec<usize> = (1..n).filter(nz).collect();
            let Some(&i) = ks.first() else {
                return Some((q(0), n));
            };
            let base = q(i as i64 - n as i64);
            if l[&i] >= 2 {
                return Some((base, i));
            }
            let j = ks.get(1).map_or(n - i, |k| k - i);
            Some((base + frac(j as i64, 2), i))
        }
        Family::SoStar { n } => {
            let i = (1..n).find(nz).unwrap_or(n);
            if i < n && (i == 1 || l[&i] < 2) {
                return None;
            }
            Some((q(2 * (i as i64 - n as i64)), i / 2))
        }
        _ => None,
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut checked = 0;
    let mut bad = Vec::new();
    while checked < RANDOM_CONFIGS {
        let f = match rng.gen_range(0..3) {
            0 => {
                let p = rng.gen_range(1..=5);
                Family::Su { p, q: rng.gen_range(1..=(9 - p).min(5)) }
            }
            1 => Family::Sp { n: rng.gen_range(2..=8) },
            _ => Family::SoStar { n: rng.gen_range(3..=8) },
        };
        let rs = RootSystem::build(f).unwrap();
        let l: Labels = rs
            .compact_labels()
            .into_iter()
            .map(|k| (k, [0, 0, 0, 1, 2, 3][rng.gen_range(0..6)]))
            .collect();
        let Some(want) = closed_form(f, &l) else { continue };
        checked += 1;
        match classify(&rs, &l) {
            Ok(c) if (c.lambda0.clone(), c.reduction_level) == want => {}
            Ok(c) => bad.push(format!("{f} {l:?}: {} level {}", c.lambda0, c.reduction_level)),
            Err(e) => bad.push(format!("{f} {l:?}: {e}")),
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} random configurations (seed 20){}", list(&bad)))
}

fn criterion_6() -> Outcome {
    let r = verify_catalog().unwrap();
    let thin: Vec<String> = r
        .entries
        .iter()
        .filter(|e| e.instantiations.len() < 3)
        .map(|e| e.id.clone())
        .collect();
    let failed: Vec<String> = r.entries.iter().filter(|e| !e.ok).map(|e| e.id.clone()).collect();
    Outcome::new(
        r.passed == r.total && thin.is_empty(),
        format!("{}/{} entries, >= 3 instantiations each{}{}", r.passed, r.total, list(&failed), list(&thin)),
    )
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let cases = [
        (SmallFamily::Su11, labels(&[])),
        (SmallFamily::Su21, labels(&[])),
        (SmallFamily::Su21, labels(&[(1, 1)])),
        (SmallFamily::Su22, labels(&[])),
        (SmallFamily::Su22, labels(&[(1, 1)])),
        (SmallFamily::Sp2, labels(&[])),
        (SmallFamily::Sp2, labels(&[(1, 1)])),
    ];
    let mut rows = 0;
    let mut bad = Vec::new();
    for (kind, l) in &cases {
        let alg = SmallAlgebra::new(*kind).unwrap();
        let r = concordance(&alg, l, ORACLE_DEGREE).unwrap();
        rows += r.rows.len();
        for row in r.rows.iter().filter(|r| !r.ok) {
            bad.push(format!("{kind} {l:?} at {}", row.lambda));
        }
    }
    let elapsed = t.elapsed();
    Outcome::new(
        bad.is_empty() && elapsed < ORACLE_BUDGET,
        format!(
            "{} algebra/label cases, {rows} λ samples, degree <= {ORACLE_DEGREE}, {elapsed:.2?} (budget {ORACLE_BUDGET:?}){}",
            cases.len(),
            list(&bad)
        ),
    )
}

fn criterion_8() -> Outcome {
    let commands: &[&[&str]] = &[
        &["classify", "--family", "su", "--p", "5", "--q", "8", "--labels", "mu5=1,mu8=1"],
        &["classify", "--family", "sp", "--n", "10", "--labels", "mu5=2", "--format", "tsv", "--lambdas", "-5,-6.5,-9"],
        &["classify", "--family", "e7", "--labels", "mu6=1"],
        &["diagram", "--family", "sp", "--n", "10", "--format", "ascii"],
        &["diagram", "--family", "su", "--p", "2", "--q", "2", "--format", "dot"],
        &["diagram", "--family", "e6", "--split-rank"],
        &["verify", "--catalog"],
        &["verify", "--oracle", "su22", "--lambdas", "-0.5,-1,-1.5", "--format", "tsv"],
        &["verify", "--oracle", "su11"],
        &["classify", "--family", "su", "--p", "5", "--q", "8", "--labels", "mu12=1"],
    ];
    let run = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_jakobsen"))
            .args(args)
            .env_remove("JAKOBSEN_LOG")
            .output()
            .unwrap();
        (o.status.code(), o.stdout, o.stderr)
    };
    let mut bad = Vec::new();
    for args in commands {
        let first = run(args);
        for _ in 0..2 {
            if run(args) != first {
                bad.push(args.join(" "));
                break;
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{} commands, 3 runs each, stdout/stderr/exit compared{}", commands.len(), list(&bad)),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("split ranks", criterion_1),
        ("lambda_s table and c_j", criterion_2),
        ("worked examples", criterion_3),
        ("height identities", criterion_4),
        ("closed forms", criterion_5),
        ("hwv catalog", criterion_6),
        ("oracle concordance", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let tag = match (o.pass, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {}: {tag} {name}: {}", i + 1, o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
