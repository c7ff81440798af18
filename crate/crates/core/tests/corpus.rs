//! End-to-end checks over a small slice of the family corpus.

mod common;

use common::{corpus, nonsquare};
use twistfam_core::families::{family_lfunctions, FamilyId, FamilySpec};
use twistfam_core::lfunction::{
    bsd_square_class_check, check_functional_equation, frobenius_checks, lfunction_naive, BsdOutcome, ExpansionMode,
    LFunctionOptions,
};

fn small_cells() -> Vec<common::CorpusCell> {
    corpus().into_iter().filter(|c| c.degree <= 7 && c.p <= 7).collect()
}

#[test]
fn corpus_covers_every_family_but_the_empty_ones() {
    let cells = corpus();
    for id in FamilyId::ALL {
        let present = cells.iter().any(|c| c.id == id);
        // For these, every p <= 13 is excluded or has empty W(F_p) when n <= 2.
        let expect_absent = matches!(id, FamilyId::Odd5Mod8 | FamilyId::Even0Mod8 | FamilyId::Even2Mod8);
        assert_eq!(present, !expect_absent, "{id}");
    }
}

#[test]
fn half_and_full_expansion_agree() {
    for cell in small_cells() {
        let opts = |mode| LFunctionOptions { mode: Some(mode), ..Default::default() };
        let full = family_lfunctions(&cell.spec, cell.p, &[1], &opts(ExpansionMode::Full)).unwrap();
        let half = family_lfunctions(&cell.spec, cell.p, &[1], &opts(ExpansionMode::Half)).unwrap();
        for (a, b) in full.iter().zip(&half) {
            assert_eq!(a.result.poly, b.result.poly, "{} w={}", cell.label(), a.w);
            assert!(b.result.overlap_ok());
        }
    }
}

#[test]
fn engine_matches_the_euler_product_on_family_members() {
    let spec = FamilySpec::build(FamilyId::Case2ThreeNonsquare, 2).unwrap();
    let (w, _) = spec.w_set(5).unwrap()[0];
    let inst = spec.instantiate(5, w).unwrap();
    let ls = family_lfunctions(&spec, 5, &[1], &LFunctionOptions::default()).unwrap();
    let engine = &ls.iter().find(|l| l.w == w).unwrap().result.poly;
    assert_eq!(&lfunction_naive(&inst.curve, engine.degree()).unwrap(), engine);
}

#[test]
fn small_cells_satisfy_functional_equation_bsd_and_frobenius_identities() {
    for cell in small_cells() {
        let ns = nonsquare(cell.p);
        for l in family_lfunctions(&cell.spec, cell.p, &[1, ns], &LFunctionOptions::default()).unwrap() {
            let tag = format!("{} w={} c={}", cell.label(), l.w, l.constant);
            assert_eq!(l.result.poly.degree(), l.invariants.n, "{tag}");
            assert!(check_functional_equation(&l.result.poly, l.invariants.epsilon).pass, "{tag}");
            for ell in [11u64, 13, 17, 19].into_iter().filter(|&e| e != cell.p && l.invariants.script_l % e != 0) {
                let bsd = bsd_square_class_check(&l.invariants, &l.result.poly, ell).unwrap();
                assert_ne!(bsd.outcome, BsdOutcome::Fail, "{tag} ell={ell}");
                let fr = frobenius_checks(&l.invariants, &l.result.poly, ell).unwrap();
                assert!(fr.charpoly_ok && fr.det_ok, "{tag} ell={ell}");
            }
        }
    }
}
