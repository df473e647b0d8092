//! SO(2)-weights of the spherical harmonics H^n_m, rotating the first two
//! coordinates of R^n.

use equibif::repr::{harmonic_dim, so2_decompose, HarmonicSpace};

fn main() -> equibif::Result<()> {
    for n in 2..=5 {
        for m in 0..=4 {
            let h = HarmonicSpace::new(n, m)?;
            let rep = so2_decompose(n, m)?;
            println!("{h:<8} dim {:>3}  {rep}", harmonic_dim(n, m)?);
            assert_eq!(rep.dim(), h.dim());
        }
    }
    Ok(())
}
