//! `SO(2)`-equivariant gradient degrees of `±Id` on unit balls.

use num_bigint::BigInt;

use crate::euler::EulerElement;
use crate::repr::SO2Rep;

fn neg_one_pow(k: u64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Degree of `-Id` on the unit ball of `rep = R[k_0,0] ⊕ R[k_1,m_1] ⊕ ...`:
/// `α_0 = (-1)^{k_0}`, `α_{m_p} = (-1)^{k_0+1} k_p`, zero elsewhere.
pub fn deg_neg_id(rep: &SO2Rep) -> EulerElement {
    let k0 = rep.trivial_dim();
    let sign = neg_one_pow(k0);
    let mut pairs = vec![(0u64, BigInt::from(sign))];
    pairs.extend(
        rep.iter()
            .filter(|(m, _)| *m > 0)
            .map(|(m, k)| (m, BigInt::from(-sign) * BigInt::from(k))),
    );
    EulerElement::from_pairs(pairs)
}

/// Degree of `Id` on any ball, which is the unit `𝕀`.
pub fn deg_id(_rep: &SO2Rep) -> EulerElement {
    EulerElement::unit()
}
