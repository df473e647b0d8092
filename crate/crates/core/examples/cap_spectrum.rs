//! Dirichlet eigenvalues of a spherical cap by shooting on the radial ODE,
//! with an on-disk cache.
//!
//! `cargo run --release --example cap_spectrum -- 2 pi/3 80`

use equibif::spectrum::cache::SpectrumCache;
use equibif::spectrum::{cross_check_hemisphere, Tolerances};
use equibif::Gamma;

fn main() -> equibif::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().and_then(|a| a.parse().ok()).unwrap_or(2);
    let gamma: Gamma = args.get(1).map_or("pi/3", String::as_str).parse()?;
    let lambda_max: f64 = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(70.0);
    let tol = Tolerances::default();

    let cache = SpectrumCache::new(std::env::temp_dir().join("equibif-example-cache"));
    let (s, outcome) = cache.load_or_assemble(n, gamma, lambda_max, None, &tol)?;
    println!("n = {n}, gamma = {gamma}, cache: {outcome:?}");
    for (k, r) in s.records.iter().enumerate() {
        println!(
            "λ_{:<2} = {:>14}  modes {:?}  mu {}",
            k + 1,
            r.lambda,
            r.gamma_set,
            r.mu
        );
    }
    if !s.coincidences().is_empty() {
        println!("records shared by several modes: {:?}", s.coincidences());
    }

    // the numerical path at γ = π/2 must land on the exact values
    let check = cross_check_hemisphere(n, 30.0, &tol)?;
    println!(
        "hemisphere cross-check: {} records agree",
        check.records.len()
    );
    Ok(())
}
