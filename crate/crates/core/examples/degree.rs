//! deg(-Id) on balls of SO(2)-representations, and the product rule
//! deg(V ⊕ W) = deg(V) * deg(W).

use equibif::{deg_id, deg_neg_id, so2_decompose, SO2Rep};

fn main() -> equibif::Result<()> {
    let v = so2_decompose(4, 2)?;
    let w = SO2Rep::from_pairs([(0, 1), (3, 2)]);
    let (dv, dw) = (deg_neg_id(&v), deg_neg_id(&w));
    println!("V = {v}: deg(-Id) = {dv}");
    println!("W = {w}: deg(-Id) = {dw}");
    println!("V ⊕ W:        deg(-Id) = {}", deg_neg_id(&v.oplus(&w)));
    println!("product:      {}", dv.mul(&dw));
    println!("deg(Id, V) = {}", deg_id(&v));

    // top coordinate of deg(-Id, H^n_m) is (-1)^{dim+1} at index m
    for m in 1..=5 {
        let h = so2_decompose(3, m)?;
        println!("H^3_{m}: dim {:>2}  {}", h.dim(), deg_neg_id(&h));
    }
    Ok(())
}
