//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use equibif::analyzer::{
    certify_unbounded, enumerate_subsets, structural_closure, symmetry_breaking, Verdict,
};
use equibif::index::{index_closed_form, index_product, IndexRequest};
use equibif::repr::{chain_count, harmonic_dim};
use equibif::spectrum::{
    assemble_spectrum, hemisphere_spectrum, mode_eigenvalues, signed_candidate_set, RadialProblem,
    Tolerances,
};
use equibif::{
    deg_neg_id, so2_decompose, EulerElement, Gamma, Lambda, SO2Rep, Sign, Spectrum, SystemConfig,
};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, i| acc * (a - i) as u128 / (i + 1) as u128)
}

fn element() -> impl Strategy<Value = EulerElement> {
    prop::collection::vec((0u64..8, -40i64..=40), 0..6).prop_map(|pairs| {
        EulerElement::from_pairs(pairs.into_iter().map(|(i, v)| (i, BigInt::from(v))))
    })
}

fn ring_axioms() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 10_000,
        failure_persistence: None,
        ..Config::default()
    });
    let unit = EulerElement::unit();
    let theta = EulerElement::theta();
    runner
        .run(&(element(), element(), element()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
            prop_assert_eq!(a.mul(&unit), a.clone());
            prop_assert_eq!(&a + &theta, a.clone());
            prop_assert!((&a + &(-&a)).is_theta());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let mut runner = TestRunner::new(Config {
        cases: 500,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&element(), |a| {
            for p in 0..=16 {
                prop_assert_eq!(a.pow(p), a.pow_closed_form(p));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("10000 triples, 500 elements x p <= 16".into())
}

fn hemisphere_exactness() -> Outcome {
    let mut checked = 0;
    for n in 2..=8u32 {
        let records = hemisphere_spectrum(n, 20).map_err(|e| e.to_string())?;
        let mut nu = 0u64;
        for (k, r) in records.iter().enumerate() {
            let m = k as u64 + 1;
            let n64 = n as u64;
            ensure(r.lambda == Lambda::Exact(m * (n64 + m - 1)), || {
                format!("n={n} lambda_{m} = {:?}", r.lambda)
            })?;
            let mu = binom(n64 + m - 2, n64 - 1) as u64;
            ensure(r.mu == mu, || format!("n={n} mu_{m} = {} != {mu}", r.mu))?;
            ensure(r.eigenspace.dim() == mu, || {
                format!("n={n} dim V(lambda_{m}) = {}", r.eigenspace.dim())
            })?;
            let modes: Vec<u32> = ((m as u32 + 1) % 2..m as u32).step_by(2).collect();
            ensure(r.gamma_set == modes, || {
                format!("n={n} modes of lambda_{m}: {:?}", r.gamma_set)
            })?;
            nu += mu;
            ensure(r.nu == nu, || format!("n={n} nu_{m}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} records"))
}

fn ode_vs_closed_form() -> Outcome {
    let tol = Tolerances::default();
    let mut roots = 0;
    for n in 2..=4u32 {
        for mode in 0..=6u32 {
            let prob = RadialProblem::new(n, mode, FRAC_PI_2).map_err(|e| e.to_string())?;
            let got = mode_eigenvalues(&prob, 60.0, &tol).map_err(|e| e.to_string())?;
            // λ_k = k(n+k-1) carries mode m iff k > m and k - 1 - m is even
            let want: Vec<u64> = (1u64..)
                .map(|k| (k, k * (n as u64 + k - 1)))
                .take_while(|&(_, l)| l <= 60)
                .filter(|&(k, _)| k > mode as u64 && (k - 1 - mode as u64) % 2 == 0)
                .map(|(_, l)| l)
                .collect();
            ensure(got.len() == want.len(), || {
                format!("n={n} mode {mode}: {got:?} vs {want:?}")
            })?;
            for (g, w) in got.iter().zip(&want) {
                let w = *w as f64;
                ensure((g - w).abs() <= 1e-6 * w, || {
                    format!("n={n} mode {mode}: {g} vs {w}")
                })?;
            }
            roots += got.len();
        }
        let numeric = assemble_spectrum(n, Gamma::Radians(FRAC_PI_2), 60.0, None, &tol)
            .map_err(|e| e.to_string())?;
        let exact =
            assemble_spectrum(n, Gamma::Hemisphere, 60.0, None, &tol).map_err(|e| e.to_string())?;
        ensure(numeric.records.len() == exact.records.len(), || {
            format!("n={n} record count")
        })?;
        for (a, b) in numeric.records.iter().zip(&exact.records) {
            ensure(a.gamma_set == b.gamma_set && a.mu == b.mu, || {
                format!("n={n} record {:?}", a.lambda)
            })?;
        }
    }
    Ok(format!("{roots} roots"))
}

fn rep() -> impl Strategy<Value = SO2Rep> {
    prop::collection::vec((0u64..10, 0u64..6), 0..6).prop_map(SO2Rep::from_pairs)
}

fn degree_product() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 1_000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(rep(), rep()), |(v, w)| {
            prop_assert_eq!(
                deg_neg_id(&v.oplus(&w)),
                deg_neg_id(&v).mul(&deg_neg_id(&w))
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for n in 2..=8u32 {
        for m in 1..=20u32 {
            let h = so2_decompose(n, m).map_err(|e| e.to_string())?;
            let d = deg_neg_id(&h);
            let want = if h.dim() % 2 == 0 { -1 } else { 1 };
            ensure(d.coeff(m as u64) == BigInt::from(want), || {
                format!("n={n} m={m}: {d}")
            })?;
            ensure(d.top_index() == Some(m as u64), || {
                format!("n={n} m={m}: top of {d}")
            })?;
        }
        // the trivial line: deg(-Id) = (-1), so the law is read for m >= 1
        ensure(
            deg_neg_id(&so2_decompose(n, 0).unwrap()) == EulerElement::from_dense(&[-1]),
            || "H_0".into(),
        )?;
    }
    Ok("1000 pairs; top law n <= 8, 1 <= m <= 20".into())
}

fn index_paths() -> Outcome {
    let mut compared = 0;
    for n in 2..=5u32 {
        let s = Spectrum {
            n,
            gamma: Gamma::Hemisphere,
            records: hemisphere_spectrum(n, 12).map_err(|e| e.to_string())?,
        };
        for m0 in 1..=12 {
            for p in 1..=5u32 {
                for (sign, req) in [
                    (Sign::Positive, IndexRequest::new(m0, Sign::Positive, p, 0)),
                    (Sign::Negative, IndexRequest::new(m0, Sign::Negative, 0, p)),
                ] {
                    let product = index_product(&s, &req).map_err(|e| e.to_string())?;
                    let closed = index_closed_form(&s, &req).map_err(|e| e.to_string())?;
                    ensure(closed.agrees_with(&product), || {
                        format!("n={n} m0={m0} p={p} {sign}: {product} vs {:?}", closed)
                    })?;
                    compared += 1;
                }
            }
        }
        let first_pos = index_product(&s, &IndexRequest::new(1, Sign::Positive, 1, 0)).unwrap();
        ensure(first_pos == EulerElement::from_dense(&[-2]), || {
            format!("BIF(lambda_1) = {first_pos}")
        })?;
        for p in 1..=5u32 {
            let neg = index_product(&s, &IndexRequest::new(1, Sign::Negative, 0, p)).unwrap();
            let want = if p % 2 == 0 { 0 } else { -2 };
            ensure(neg == EulerElement::from_dense(&[want]), || {
                format!("BIF(-lambda_1), p = {p}: {neg}")
            })?;
        }
    }
    Ok(format!("{compared} index pairs"))
}

fn theta_sum_exhaustion() -> Outcome {
    let mut subsets = 0u64;
    let mut certificates = 0;
    for n in [2u32, 3] {
        let s = Spectrum {
            n,
            gamma: Gamma::Hemisphere,
            records: hemisphere_spectrum(n, 8).map_err(|e| e.to_string())?,
        };
        for pm in 1..=3u32 {
            for pp in 1..=3u32 {
                let config = SystemConfig::hemisphere(n, pm, pp).unwrap();
                let cands = signed_candidate_set(&s.records, pm, pp).unwrap();
                let indices: Vec<EulerElement> = cands
                    .iter()
                    .map(|c| {
                        index_product(&s, &IndexRequest::new(c.index, c.sign, pm, pp)).unwrap()
                    })
                    .collect();
                // Θ indices occur only at ±λ_1 with an even count on that side
                for (c, e) in cands.iter().zip(&indices) {
                    let p = config.count_for(c.sign);
                    let expect_theta = c.index == 1 && p % 2 == 0;
                    ensure(e.is_theta() == expect_theta, || {
                        format!("n={n} ({pm},{pp}) {c}: {e}")
                    })?;
                }
                let thetas = indices.iter().filter(|e| e.is_theta()).count() as u32;
                let tally = enumerate_subsets(&indices, None).ok_or("enumeration failed")?;
                ensure(tally.disagreements == 0, || {
                    format!("n={n} ({pm},{pp}): structural disagreement")
                })?;
                ensure(tally.structural_decided == tally.subsets, || {
                    format!("n={n} ({pm},{pp}): undecided subsets")
                })?;
                ensure(tally.theta_subsets == (1u64 << thetas) - 1, || {
                    format!("n={n} ({pm},{pp}): {} Theta subsets", tally.theta_subsets)
                })?;
                ensure(structural_closure(&indices).decided, || {
                    format!("n={n} ({pm},{pp}): closure")
                })?;
                subsets += tally.subsets;
                for c in &cands {
                    let p = config.count_for(c.sign);
                    if c.index == 1 && p % 2 == 0 {
                        continue;
                    }
                    let cert = certify_unbounded(&config, c.index, c.sign, 8, 1 << 20)
                        .map_err(|e| e.to_string())?;
                    ensure(cert.verdict == Verdict::Proved, || {
                        format!("n={n} ({pm},{pp}) {c}: {:?}", cert.verdict)
                    })?;
                    cert.verify().map_err(|e| e.to_string())?;
                    certificates += 1;
                }
            }
        }
    }
    Ok(format!("{subsets} subsets, {certificates} certificates"))
}

fn symmetry_breaking_rule() -> Outcome {
    let tol = Tolerances::default();
    for n in 2..=6u32 {
        let s = Spectrum {
            n,
            gamma: Gamma::Hemisphere,
            records: hemisphere_spectrum(n, 20).map_err(|e| e.to_string())?,
        };
        let config = SystemConfig::hemisphere(n, 1, 0).unwrap();
        for m0 in 1..=20 {
            let v = symmetry_breaking(&config, &s, m0, Sign::Positive, &tol)
                .map_err(|e| e.to_string())?
                .verdict;
            ensure((v == Verdict::Proved) == (m0 % 2 == 0), || {
                format!("n={n} m0={m0}: {v:?}")
            })?;
        }
    }
    let mut cap_records = 0;
    for (n, gamma) in [(2, PI / 3.0), (3, PI / 4.0), (4, 2.0 * PI / 3.0)] {
        let g = Gamma::Radians(gamma);
        let s = assemble_spectrum(n, g, 60.0, None, &tol).map_err(|e| e.to_string())?;
        let config = SystemConfig::new(n, g, 0, 1).unwrap();
        for (k, r) in s.records.iter().enumerate() {
            let v = symmetry_breaking(&config, &s, k + 1, Sign::Negative, &tol)
                .map_err(|e| e.to_string())?
                .verdict;
            let want = if r.gamma_set.contains(&0) {
                Verdict::Inconclusive
            } else {
                Verdict::Proved
            };
            ensure(v == want, || {
                format!("n={n} gamma={gamma} record {}: {v:?}", k + 1)
            })?;
            cap_records += 1;
        }
    }
    Ok(format!(
        "hemisphere n <= 6, m0 <= 20; {cap_records} cap records"
    ))
}

/// Chains `m = c_0 >= c_1 >= ... >= c_{n-2} >= 0`, tallied by the bottom entry.
fn chains_by_bottom(m: u32, len: u32, tally: &mut [u64]) {
    fn walk(upper: u32, left: u32, tally: &mut [u64]) {
        if left == 0 {
            tally[upper as usize] += 1;
            return;
        }
        for c in 0..=upper {
            walk(c, left - 1, tally);
        }
    }
    walk(m, len, tally);
}

fn weight_oracle() -> Outcome {
    for n in 3..=7u32 {
        for m in 0..=10u32 {
            let mut tally = vec![0u64; m as usize + 1];
            chains_by_bottom(m, n - 2, &mut tally);
            for i in 0..=m {
                let closed = chain_count(n, m, i).map_err(|e| e.to_string())?;
                ensure(closed == tally[i as usize], || {
                    format!("n={n} m={m} i={i}: {closed} vs {}", tally[i as usize])
                })?;
            }
        }
    }
    for n in 2..=8u64 {
        for m in 0..=20u64 {
            let polys = binom(m + n - 1, n - 1) - if m >= 2 { binom(m + n - 3, n - 1) } else { 0 };
            let dim = so2_decompose(n as u32, m as u32).unwrap().dim();
            ensure(dim as u128 == polys, || {
                format!("n={n} m={m}: {dim} vs {polys}")
            })?;
            ensure(
                harmonic_dim(n as u32, m as u32).unwrap() as u128 == polys,
                || format!("n={n} m={m}"),
            )?;
        }
    }
    Ok("chains n <= 7, m <= 10; dimensions n <= 8, m <= 20".into())
}

pub const GOLDEN: [(&str, &str); 3] = [
    (
        "spectrum --n 2 --gamma hemisphere --lambda-max 21",
        "spectrum_n2_hemisphere.txt",
    ),
    (
        "index --n 2 --gamma hemisphere --m0 1 --sign + --p-minus 1 --p-plus 0",
        "index_n2_first.txt",
    ),
    (
        "certify symmetry-breaking --n 3 --gamma hemisphere --m0 2 --p-minus 1 --p-plus 0",
        "certify_symmetry_n3.txt",
    ),
];

fn run_cli(args: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("equibif").chain(args.split_whitespace());
    let code = equibif::cli::run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let body = match text.split_once('\n') {
        Some((first, rest)) if first.starts_with("# equibif ") => rest.to_string(),
        _ => text,
    };
    (code, body)
}

fn cli_golden() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (args, file) in GOLDEN {
        let want = std::fs::read_to_string(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let (code, first) = run_cli(args);
        let (_, second) = run_cli(args);
        ensure(code == 0, || format!("{args}: exit {code}"))?;
        ensure(first == second, || {
            format!("{args}: output differs between runs")
        })?;
        ensure(first == want, || format!("{args}: differs from {file}"))?;
    }
    Ok("3 invocations".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            1,
            "Euler-ring axioms and closed-form powers",
            Duration::from_secs(5),
            ring_axioms,
        ),
        (
            2,
            "hemisphere spectrum exactness",
            Duration::from_secs(1),
            hemisphere_exactness,
        ),
        (
            3,
            "shooting roots vs exact hemisphere eigenvalues",
            Duration::from_secs(60),
            ode_vs_closed_form,
        ),
        (
            4,
            "degree product property and top-coordinate law",
            Duration::from_secs(30),
            degree_product,
        ),
        (
            5,
            "index product vs closed form",
            Duration::from_secs(30),
            index_paths,
        ),
        (
            6,
            "Theta-sum exhaustion and structural agreement",
            Duration::from_secs(120),
            theta_sum_exhaustion,
        ),
        (
            7,
            "symmetry breaking",
            Duration::from_secs(60),
            symmetry_breaking_rule,
        ),
        (
            8,
            "weight multiplicities vs chain enumeration",
            Duration::from_secs(30),
            weight_oracle,
        ),
        (9, "CLI golden output", Duration::from_secs(30), cli_golden),
    ];
    let mut failed = 0;
    for (no, title, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; over the {limit:?} budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {no}: PASS  {title} ({detail}; {took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {no}: FAIL  {title}: {why} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
