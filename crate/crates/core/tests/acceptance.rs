//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use mdrs::analysis::{self, CurveKind};
use mdrs::distance::{self, min_weight_exhaustive};
use mdrs::erasure::{decode_erasures, ErasurePattern, ReceivedWord};
use mdrs::params::{self, check_count_small_d, info_count, rate_lower_bound};
use mdrs::{Code, CodeSpec, DegreeRegion, Element, Field};
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(q: u64, n: usize, d: u64) -> CodeSpec {
    CodeSpec::new(Field::with_order(q).unwrap(), n, d).unwrap()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(took)
}

// Information-symbol table, q = 5.
const INFO_TABLE: &[(u64, &[u32], usize)] = &[
    (3, &[4, 4, 4, 3, 2], 22),
    (4, &[4, 4, 3, 3, 1], 20),
    (5, &[4, 3, 3, 2, 0], 17),
    (6, &[3, 3, 3, 2], 15),
    (7, &[3, 3, 2, 1], 13),
    (8, &[3, 3, 2, 1], 13),
    (9, &[3, 2, 2, 0], 11),
    (10, &[3, 2, 1, 0], 10),
];

fn ac1_info_table() -> Outcome {
    let start = Instant::now();
    let field = Field::new(5, 1).unwrap();
    let mut got = Vec::new();
    for &(d, _, _) in INFO_TABLE {
        let region = DegreeRegion::build(&CodeSpec::new(field.clone(), 2, d).unwrap()).unwrap();
        let km: Vec<u32> = region.profile().into_iter().map(|(_, b)| b).collect();
        got.push((d, km, region.len()));
    }
    let took = within(start, Duration::from_millis(1), "info table")?;
    for (&(d, km, k), (_, gkm, gk)) in INFO_TABLE.iter().zip(&got) {
        ensure!(gkm.as_slice() == km && *gk == k, "d={d}: got K_m={gkm:?} K={gk}, want {km:?} K={k}");
    }
    Ok(format!("8 columns exact, K = 22,20,17,15,13,13,11,10 ({took:?})"))
}

// Check-symbol table, rows d = 2..=16, columns n = 2..=5.
const CHECK_TABLE: [[u64; 4]; 15] = [
    [1, 1, 1, 1],
    [3, 4, 5, 6],
    [5, 7, 9, 11],
    [8, 13, 19, 26],
    [10, 16, 23, 31],
    [14, 25, 39, 56],
    [16, 28, 43, 61],
    [20, 38, 63, 96],
    [23, 44, 73, 111],
    [27, 53, 89, 136],
    [29, 56, 93, 141],
    [35, 74, 133, 216],
    [37, 77, 137, 221],
    [41, 86, 153, 246],
    [45, 95, 169, 271],
];

fn ac2_check_table() -> Outcome {
    let start = Instant::now();
    let got: Vec<Vec<u64>> = (2..=16u64).map(|d| (2..=5).map(|n| check_count_small_d(d, n)).collect()).collect();
    let took = within(start, Duration::from_millis(10), "check table")?;
    for (i, row) in CHECK_TABLE.iter().enumerate() {
        ensure!(got[i] == row, "d={}: got {:?}, want {:?}", i + 2, got[i], row);
    }
    Ok(format!("60 cells exact; d=5,n=3 -> {}; d=10,n=4 -> {}; d=16,n=5 -> {} ({took:?})", got[3][1], got[8][2], got[14][3]))
}

fn ac3_small_d_consistency() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for q in [8u64, 16, 25] {
        for n in [2usize, 3] {
            for d in 1..=q {
                let s = spec(q, n, d);
                let lhs = params::check_count(&s);
                let rhs = check_count_small_d(d, n);
                ensure!(lhs == rhs, "q={q} n={n} d={d}: q^n - K = {lhs}, small-d formula = {rhs}");
                checked += 1;
            }
        }
    }
    let took = within(start, Duration::from_secs(1), "small-d consistency")?;
    Ok(format!("{checked} (q,n,d) triples agree ({took:?})"))
}

fn ac4_distance() -> Outcome {
    let start = Instant::now();
    let mut specs: Vec<(u64, usize, u64)> = Vec::new();
    specs.extend((2..=9).map(|d| (3, 2, d)));
    specs.extend((1..=4).map(|d| (2, 2, d)));
    specs.extend((1..=8).map(|d| (2, 3, d)));
    specs.push((4, 2, 4));
    // every other spec over q <= 5, n <= 3 that fits the enumeration limits
    for q in [2u64, 3, 4, 5] {
        for n in 1..=3usize {
            let len = q.pow(n as u32);
            for d in 1..=len {
                let k = info_count(&spec(q, n, d)) as u32;
                let words = q.checked_pow(k).unwrap_or(u64::MAX);
                if words <= 1 << 22 && words.saturating_mul(len) <= 1 << 27 && !specs.contains(&(q, n, d)) {
                    specs.push((q, n, d));
                }
            }
        }
    }
    let mut equal = 0;
    let mut excess = Vec::new();
    for &(q, n, d) in &specs {
        let code = Code::new(spec(q, n, d)).unwrap();
        let r = min_weight_exhaustive(&code, 1 << 22).map_err(|e| format!("q={q} n={n} d={d}: {e}"))?;
        ensure!(r.observed >= d, "q={q} n={n} d={d}: found weight {} below designed distance", r.observed);
        if r.observed == d {
            equal += 1;
        } else {
            excess.push(format!("(q={q},n={n},d={d})->{}", r.observed));
        }
    }
    let took = start.elapsed();
    Ok(format!(
        "{} specs, all weights >= d; equality in {equal}; strict excess in {}: {} ({took:?})",
        specs.len(),
        excess.len(),
        excess.join(" ")
    ))
}

fn ac5_one_dimensional() -> Outcome {
    let mut n_specs = 0;
    for q in [2u64, 3, 4, 5, 7] {
        for d in 1..=q {
            let code = Code::new(spec(q, 1, d)).unwrap();
            ensure!(code.dimension() as u64 == q - d + 1, "q={q} d={d}: K={}", code.dimension());
            let r = min_weight_exhaustive(&code, distance::DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure!(r.observed == d, "q={q} d={d}: min weight {}", r.observed);
            n_specs += 1;
        }
    }
    Ok(format!("{n_specs} one-dimensional codes are MDS"))
}

fn ac6_erasures() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let random_msg = |code: &Code, rng: &mut ChaCha8Rng| {
        let q = code.field().order();
        code.message((0..code.dimension()).map(|_| Element::new(rng.gen_range(0..q))).collect()).unwrap()
    };

    let code = Code::new(spec(3, 2, 3)).unwrap();
    let g = code.generator_matrix();
    let mut decoded = 0;
    for _ in 0..100 {
        let msg = random_msg(&code, &mut rng);
        let cw = code.encode(&msg).unwrap();
        for a in 0..9 {
            for b in a + 1..9 {
                let rx = ReceivedWord::erase(&cw, &ErasurePattern::new(9, vec![a, b]).unwrap());
                let got = decode_erasures(&rx, &g).map_err(|e| format!("q=3 pattern {{{a},{b}}}: {e}"))?;
                ensure!(got == msg, "q=3 pattern {{{a},{b}}}: wrong message");
                decoded += 1;
            }
        }
    }

    let code = Code::new(spec(4, 2, 4)).unwrap();
    let g = code.generator_matrix();
    for trial in 0..10_000 {
        let msg = random_msg(&code, &mut rng);
        let cw = code.encode(&msg).unwrap();
        let count = rng.gen_range(0..=3);
        let erased = sample(&mut rng, 16, count).into_vec();
        let rx = ReceivedWord::erase(&cw, &ErasurePattern::new(16, erased.clone()).unwrap());
        let got = decode_erasures(&rx, &g).map_err(|e| format!("q=4 trial {trial} pattern {erased:?}: {e}"))?;
        ensure!(got == msg, "q=4 trial {trial}: wrong message");
        decoded += 1;
    }
    Ok(format!("{decoded} decodes exact, 0 rank-deficient"))
}

fn ac7_product() -> Outcome {
    let mut compared = 0;
    for q in [8u64, 16] {
        for dc in 1..=q {
            let p = analysis::product_code_checks(q, dc).map_err(|e| e.to_string())?;
            ensure!(
                p.checks == p.checks_closed_form,
                "q={q} d_c={dc}: N-K={} but (d-1)(2n-d+1)={}",
                p.checks,
                p.checks_closed_form
            );
            ensure!(
                analysis::product_rate_relation_exact(q, dc) == BigRational::new(p.checks.into(), p.length.into()),
                "q={q} d_c={dc}: rate relation disagrees"
            );
        }
        let pts = analysis::emit_curves(CurveKind::ProductCompare, q, &[], &[]).map_err(|e| e.to_string())?;
        let label = format!("2D q={q}");
        for p in pts.iter().filter(|p| p.series.starts_with("product")) {
            let twin = pts.iter().find(|t| t.series == label && t.d == p.d).ok_or("missing 2-D point")?;
            ensure!(twin.k_over_n >= p.k_over_n, "q={q} d={}: 2-D K/N {} < product {}", p.d, twin.k_over_n, p.k_over_n);
            compared += 1;
        }
    }
    Ok(format!("2-D >= product at {compared} shared points; identity holds for all d_c <= q"))
}

fn ac8_rate_bound() -> Outcome {
    let mut checked = 0;
    for q in [5u64, 8, 16] {
        for d in 1..=q * q {
            let s = spec(q, 2, d);
            let rate = BigRational::new(info_count(&s).into(), (q * q).into());
            let bound = rate_lower_bound(&s).unwrap();
            ensure!(rate > bound, "q={q} d={d}: K/N={rate} not above bound {bound}");
            checked += 1;
        }
    }
    Ok(format!("K/N strictly above the bound at all {checked} points"))
}

fn ac9_shortening_gv() -> Outcome {
    let start = Instant::now();
    let code = Code::new(spec(16, 2, 3)).unwrap();
    let short = analysis::shorten(&code, 224).map_err(|e| e.to_string())?;
    ensure!(
        (short.length, short.dimension) == (32, 29) && short.generator.rank() == 29,
        "shortened to [{}, {}], rank {}",
        short.length,
        short.dimension,
        short.generator.rank()
    );
    let d_ok = distance::distance_at_least(&short.generator, 3, distance::DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure!(d_ok, "shortened code has a codeword of weight < 3");
    let k_gv = analysis::gv_dimension(32, 3, 16);
    ensure!(k_gv == 29, "k_GV(32,3,16) = {k_gv}");

    let lengths = [32, 64, 128];
    let pts = analysis::emit_curves(CurveKind::GvCompare, 16, &[], &lengths).map_err(|e| e.to_string())?;
    let csv = analysis::curves_csv(&pts);
    ensure!(csv.starts_with(analysis::CSV_HEADER), "bad CSV header");
    let cmp = analysis::gv_comparisons(16, &lengths).map_err(|e| e.to_string())?;
    let at3 = cmp.iter().find(|c| c.length == 32 && c.d == 3).ok_or("no N=32, d=3 point")?;
    ensure!(at3.k_shortened >= at3.k_gv, "K'={} < k_GV={} at d=3", at3.k_shortened, at3.k_gv);
    let took = within(start, Duration::from_secs(1), "shortening + GV")?;

    let tally = |n: u64, rel: &str| cmp.iter().filter(|c| c.length == n && c.relation == rel).count();
    let summary: Vec<String> = lengths
        .iter()
        .map(|&n| format!("N={n}: above {} equal {} below {}", tally(n, "above"), tally(n, "equal"), tally(n, "below")))
        .collect();
    let n32_above: Vec<String> = cmp
        .iter()
        .filter(|c| c.length == 32 && c.relation == "above")
        .map(|c| format!("d={}", c.d))
        .collect();
    Ok(format!(
        "[32,29,>=3] verified by parity check; k_GV=29; K'={} at d=3; {}; N=32 above GV at [{}] ({} CSV rows, {took:?})",
        at3.k_shortened,
        summary.join("; "),
        n32_above.join(","),
        pts.len()
    ))
}

fn ac10_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let msg = dir.path().join("msg.txt");
    std::fs::write(&msg, "2 0 1 1 2 0\n").map_err(|e| e.to_string())?;
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    let msg_s = msg.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["tables", "--which", "info"],
        vec!["tables", "--which", "checks"],
        vec!["params", "--p", "2", "--m", "2", "--n", "3", "--d", "9"],
        vec!["encode", "--p", "3", "--n", "2", "--d", "3", "--msg", msg_s],
        vec!["verify", "--p", "3", "--n", "2", "--d", "3"],
        vec!["verify", "--p", "5", "--n", "2", "--d", "4", "--trials", "3000", "--seed", "11"],
        vec!["simulate", "--p", "3", "--n", "2", "--d", "3", "--epsilon", "0.2", "--trials", "5000", "--seed", "5"],
        vec!["curves", "--kind", "dim-sweep", "--q", "4"],
        vec!["curves", "--kind", "dim2", "--q", "5"],
    ];
    let exe = env!("CARGO_BIN_EXE_mdrs");
    for args in &runs {
        let a = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        let b = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        ensure!(a.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&a.stderr));
        ensure!(a.stdout == b.stdout, "{args:?} differs between runs");
    }
    for out in [&csv_a, &csv_b] {
        let st = Command::new(exe)
            .args(["curves", "--kind", "gv-compare", "--q", "16", "--out", out.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(st.status.success(), "gv-compare failed");
    }
    ensure!(std::fs::read(&csv_a).unwrap() == std::fs::read(&csv_b).unwrap(), "gv-compare CSV differs");
    Ok(format!("{} commands byte-identical across two runs", runs.len() + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 information-symbol table", ac1_info_table),
        ("AC2 check-symbol table", ac2_check_table),
        ("AC3 small-d check count consistency", ac3_small_d_consistency),
        ("AC4 exhaustive distance >= designed d", ac4_distance),
        ("AC5 one-dimensional reduction", ac5_one_dimensional),
        ("AC6 erasure guarantee", ac6_erasures),
        ("AC7 product code comparison", ac7_product),
        ("AC8 two-dimensional rate bound", ac8_rate_bound),
        ("AC9 shortening and GV comparison", ac9_shortening_gv),
        ("AC10 determinism", ac10_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
