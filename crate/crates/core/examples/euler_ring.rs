//! Arithmetic in the Euler ring U(SO(2)).
//!
//! Run with `cargo run --example euler_ring`.

use equibif::EulerElement;

fn main() {
    let a = EulerElement::from_dense(&[-1, 2, 0, 1]);
    let b = EulerElement::from_dense(&[1, 0, -3]);

    println!("a       = {a}");
    println!("b       = {b}");
    println!("a + b   = {}", &a + &b);
    println!("a * b   = {}", a.mul(&b));
    println!("a^5     = {}", a.pow(5));
    println!("closed  = {}", a.pow_closed_form(5));

    // constant term ±1 means invertible
    let inv = a.inverse().expect("a_0 = -1");
    println!("a^-1    = {inv}");
    println!("a*a^-1  = {}", a.mul(&inv));
    println!("a^-3    = {}", a.pow_signed(-3).unwrap());
    println!("b^-1    = {:?}", b.inverse().map(|e| e.to_string()));

    for e in [
        &a,
        &b,
        &EulerElement::from_dense(&[0, -2, -1]),
        &EulerElement::theta(),
    ] {
        println!("{e} is {}", e.classify());
    }
    println!("json: {}", serde_json::to_string(&a).unwrap());
}
