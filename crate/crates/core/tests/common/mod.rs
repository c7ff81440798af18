//! The L-function corpus shared by the acceptance run and the corpus tests.
#![allow(dead_code)]

use twistfam_core::algebra::zech::MAX_ORDER;
use twistfam_core::algebra::PrimeField;
use twistfam_core::families::{FamilyId, FamilySpec};
use twistfam_core::lfunction::{plan_levels, GlobalInvariants, DEFAULT_BUDGET};
use twistfam_core::reduction::discriminant_places;

pub const CORPUS_PRIMES: [u64; 4] = [5, 7, 11, 13];
pub const CORPUS_MAX_N: u32 = 2;

/// One `(family, n, p)` block of the corpus; every `w` in `W(F_p)` is a curve.
#[derive(Clone, Debug)]
pub struct CorpusCell {
    pub id: FamilyId,
    pub n: u32,
    pub p: u64,
    pub spec: FamilySpec,
    pub members: usize,
    /// Degree of every member's L-function.
    pub degree: usize,
    /// `p^r` for the deepest level the expansion needs.
    pub top_field: u128,
}

impl CorpusCell {
    pub fn label(&self) -> String {
        format!("{} n={} p={}", self.id, self.n, self.p)
    }

    /// Whether the deepest level fits the field tables at all.
    pub fn computable(&self) -> bool {
        self.top_field <= MAX_ORDER
    }
}

pub fn parameters(id: FamilyId, max_n: u32) -> impl Iterator<Item = u32> {
    let hi = id.max_n().map_or(max_n, |m| m.min(max_n));
    id.min_n()..=hi
}

/// Every non-excluded `(family, n, p)` with a non-empty `W(F_p)`.
pub fn corpus() -> Vec<CorpusCell> {
    let mut cells = Vec::new();
    for id in FamilyId::ALL {
        for n in parameters(id, CORPUS_MAX_N) {
            let spec = FamilySpec::build(id, n).expect("corpus family builds");
            for p in CORPUS_PRIMES {
                if spec.exclusion(p).is_some() {
                    continue;
                }
                let ws = spec.w_set(p).expect("non-excluded prime");
                let Some(&(w, _)) = ws.first() else { continue };
                let inst = spec.instantiate(p, w).expect("member of W");
                let local = discriminant_places(&inst.curve).expect("Tate");
                let inv = GlobalInvariants::from_places(p, &local).expect("invariants");
                let (_, r) = plan_levels(p, inv.n, DEFAULT_BUDGET);
                cells.push(CorpusCell {
                    id,
                    n,
                    p,
                    members: ws.len(),
                    degree: inv.n,
                    top_field: (p as u128).pow(r as u32),
                    spec: spec.clone(),
                });
            }
        }
    }
    cells
}

/// The smallest nonsquare mod `p`.
pub fn nonsquare(p: u64) -> u64 {
    let f = PrimeField::new(p).unwrap();
    (2..p).find(|&c| f.legendre(c) == -1).unwrap()
}
