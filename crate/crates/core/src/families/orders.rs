//! Certifying that Frobenius matrices of small intro-family members avoid
//! given orders mod `ell`.

use super::{FamilyId, FamilySpec};
use crate::algebra::{Poly, PrimeField};
use crate::error::Result;
use crate::lfunction::{frobenius_matrix_mod_ell, lfunction, LFunctionOptions, LFunctionPoly};
use crate::orthogonal::order_excludes;
use serde::Serialize;

/// Exponents `e` for which `A^e = I` must be ruled out.
pub const EXCLUDED_ORDERS: [u64; 5] = [16, 20, 24, 28, 36];

/// The member `E_m` of the intro family over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderWitness {
    pub p: u64,
    pub m: u64,
}

/// `E_2` over `F_5`, then `E_3` over `F_7`.
pub const ORDER_WITNESSES: [OrderWitness; 2] = [OrderWitness { p: 5, m: 2 }, OrderWitness { p: 7, m: 3 }];

impl OrderWitness {
    pub fn lfunction(&self) -> Result<LFunctionPoly> {
        let spec = FamilySpec::build(FamilyId::IntroN5, 0)?;
        let field = PrimeField::new(self.p)?;
        let curve = spec.base_curve(field)?.twist_by(&Poly::linear(field, self.m))?;
        Ok(lfunction(&curve, &LFunctionOptions::default())?.1.poly)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub witness: OrderWitness,
    /// `false` when `ell = p` or the normalized polynomial degenerates mod `ell`.
    pub applicable: bool,
    /// Exponents with `A^e = I`.
    pub failures: Vec<u64>,
}

impl WitnessOutcome {
    pub fn certifies(&self) -> bool {
        self.applicable && self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCertificate {
    pub ell: u64,
    pub outcomes: Vec<WitnessOutcome>,
    /// The first witness whose matrix avoids every excluded order.
    pub certified_by: Option<OrderWitness>,
}

/// Tests each witness's Frobenius matrix mod `ell` against [`EXCLUDED_ORDERS`].
pub fn order_certificate(ell: u64, witnesses: &[(OrderWitness, LFunctionPoly)]) -> OrderCertificate {
    let outcomes: Vec<WitnessOutcome> = witnesses
        .iter()
        .map(|(w, l)| {
            let matrix = (ell != w.p).then(|| frobenius_matrix_mod_ell(l, ell).ok()).flatten();
            match matrix {
                Some(a) => WitnessOutcome { witness: *w, applicable: true, failures: order_excludes(&a, &EXCLUDED_ORDERS).failures },
                None => WitnessOutcome { witness: *w, applicable: false, failures: Vec::new() },
            }
        })
        .collect();
    let certified_by = outcomes.iter().find(|o| o.certifies()).map(|o| o.witness);
    OrderCertificate { ell, outcomes, certified_by }
}

/// The witnesses paired with their L-functions.
pub fn witness_lfunctions() -> Result<Vec<(OrderWitness, LFunctionPoly)>> {
    ORDER_WITNESSES.iter().map(|w| Ok((*w, w.lfunction()?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_fails_only_at_seventeen() {
        let ws = witness_lfunctions().unwrap();
        let c = order_certificate(17, &ws);
        assert_eq!(c.outcomes[0].failures, vec![36]);
        assert_eq!(c.certified_by, Some(ORDER_WITNESSES[1]));
        let c5 = order_certificate(5, &ws);
        assert!(!c5.outcomes[0].applicable);
        assert_eq!(c5.certified_by, Some(ORDER_WITNESSES[1]));
        assert_eq!(order_certificate(7, &ws).certified_by, Some(ORDER_WITNESSES[0]));
    }
}
