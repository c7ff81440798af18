use super::{rational_mod, Condition, FamilySpec, Point, TamagawaClaim};
use crate::algebra::{is_prime, PrimeField};
use crate::error::Result;
use crate::lfunction::{plan_levels, GlobalInvariants, LFunctionOptions, LFunctionResult, TraceTable, TwistSpec};
use crate::reduction::{discriminant_places, Kodaira, LocalReductionData};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Waived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self { name: name.into(), status, detail: detail.into() }
    }

    fn compare<T: PartialEq + std::fmt::Display>(name: &str, got: T, want: T) -> Self {
        let ok = got == want;
        Self::new(name, ok, format!("computed {got}, claimed {want}"))
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// One bad place of a member and how it was matched against the claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceObservation {
    pub place: String,
    pub degree: usize,
    pub kodaira: Kodaira,
    pub tamagawa: u32,
    pub role: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub p: u64,
    pub w: u64,
    pub m: u64,
    pub invariants: Option<GlobalInvariants>,
    pub places: Vec<PlaceObservation>,
    pub checks: Vec<Check>,
}

impl CellReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub family: String,
    pub n: u32,
    pub condition: Condition,
    pub primes: Vec<u64>,
    pub excluded: Vec<(u64, String)>,
    pub ells: Vec<u64>,
    pub ells_skipped: Vec<(u64, String)>,
    pub cells: Vec<CellReport>,
    /// `(p, Kod(E_m) identical for every w at p)`.
    pub kodaira_independent_by_prime: Vec<(u64, bool)>,
    /// Kod(E_m) identical across the whole grid.
    pub kodaira_independent: bool,
    /// No member was checked: every prime was excluded or had empty `W(F_p)`.
    pub vacuous: bool,
    pub pass: bool,
}

impl CriterionReport {
    pub fn failures(&self) -> impl Iterator<Item = (&CellReport, &Check)> {
        self.cells.iter().flat_map(|c| c.checks.iter().filter(|k| k.failed()).map(move |k| (c, k)))
    }

    pub fn waivers(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .cells
            .iter()
            .flat_map(|c| c.checks.iter().filter(|k| k.status == CheckStatus::Waived).map(|k| k.name.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub ells: Vec<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { ells: (5..50).filter(|&l| is_prime(l)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonLawReport {
    pub p: u64,
    pub w: u64,
    pub m: u64,
    pub computed: i8,
    /// The closed-form product of Legendre symbols, if every factor is a unit.
    pub formula: Option<i8>,
    pub claimed: Option<i8>,
    pub pass: bool,
}

/// Compares the closed-form root number of the family at `w` with the one
/// assembled from local root factors.
pub fn epsilon_law_check(spec: &FamilySpec, p: u64, w: u64) -> Result<EpsilonLawReport> {
    let inst = spec.instantiate(p, w)?;
    let field = inst.curve.field();
    let local = discriminant_places(&inst.curve)?;
    let inv = GlobalInvariants::from_places(p, &local)?;
    Ok(law_report(spec, field, inst.w, inst.m, inv.epsilon))
}

fn law_report(spec: &FamilySpec, field: PrimeField, w: u64, m: u64, computed: i8) -> EpsilonLawReport {
    let formula = spec.epsilon_law_value(field, m);
    let claimed = spec.epsilon_law.as_ref().and_then(|l| l.claimed);
    let pass = formula == Some(computed) && claimed.is_none_or(|c| c == computed);
    EpsilonLawReport { p: field.p(), w, m, computed, formula, claimed, pass }
}

fn is_square_mod(ell: u64, v: &BigUint) -> bool {
    let f = PrimeField::new(ell).expect("ell is prime");
    let r = (v % ell).to_u64().unwrap_or(0);
    f.legendre(r) == 1
}

fn point_mod(point: &Point, field: PrimeField) -> Option<Option<u64>> {
    match point {
        Point::Infinity => Some(None),
        Point::Finite(r) => rational_mod(r, field).map(Some),
    }
}

fn kod_list(ks: &[Kodaira]) -> String {
    ks.iter().map(ToString::to_string).collect::<Vec<_>>().join("|")
}

fn verify_cell(spec: &FamilySpec, field: PrimeField, w: u64, m: u64, ells: &[u64]) -> CellReport {
    let p = field.p();
    let mut cell = CellReport { p, w, m, invariants: None, places: Vec::new(), checks: Vec::new() };
    let computed = spec
        .instantiate(p, w)
        .and_then(|inst| Ok((discriminant_places(&inst.curve)?, inst)))
        .and_then(|(local, inst)| Ok((GlobalInvariants::from_places(p, &local)?, local, inst)));
    let (inv, local, inst) = match computed {
        Ok(v) => v,
        Err(e) => {
            cell.checks.push(Check::new("pipeline", false, e.to_string()));
            return cell;
        }
    };
    let pr = &spec.profile;
    let checks = &mut cell.checks;
    checks.push(Check::compare("N", inv.n, pr.n));
    if let Some(chi) = pr.chi {
        checks.push(Check::compare("chi", inv.chi, chi));
    }
    checks.push(Check::compare("gamma", inv.gamma.clone(), BigUint::from(pr.gamma)));
    checks.push(Check::compare("script_L", inv.script_l, pr.script_l));
    checks.push(Check::compare("B", inv.b, pr.b));

    // Match every bad place against the special points and the roots of (t - m) f.
    let specials: Vec<(usize, Option<u64>)> = pr
        .places
        .iter()
        .enumerate()
        .filter_map(|(i, c)| point_mod(&c.point, field).map(|v| (i, v)))
        .collect();
    let mut seen = vec![None; pr.places.len()];
    let mut i0star_places = 0usize;
    let mut i0star_ok = true;
    let mut unexpected = Vec::new();
    for x in local.iter().filter(|x| !x.kodaira.is_good()) {
        let key = if x.place.is_infinity() { Some(None) } else { x.place.rational_point().map(Some) };
        let special = key.and_then(|k| specials.iter().find(|(_, v)| *v == k).map(|(i, _)| *i));
        let role = if let Some(i) = special {
            seen[i] = Some(x);
            format!("special {}", pr.places[i].point)
        } else if key.flatten().is_some_and(|a| inst.twist.eval(a) == 0) {
            i0star_places += 1;
            let ok = x.kodaira == Kodaira::IStar(0) && pr.i0star_tamagawa.admits(x.tamagawa);
            i0star_ok &= ok;
            "root of (t - m) f".to_string()
        } else {
            unexpected.push(format!("{} ({})", x.place, x.kodaira));
            "unexpected".to_string()
        };
        cell.places.push(PlaceObservation {
            place: x.place.to_string(),
            degree: x.degree,
            kodaira: x.kodaira,
            tamagawa: x.tamagawa,
            role,
        });
    }
    for (claim, obs) in pr.places.iter().zip(&seen) {
        let name = format!("place {}", claim.point);
        match obs {
            None => checks.push(Check::new(name, false, format!("no bad place observed, claimed {}", kod_list(&claim.kodaira)))),
            Some(x) => {
                let ok = claim.kodaira.contains(&x.kodaira) && claim.tamagawa.admits(x.tamagawa);
                let want_c = match &claim.tamagawa {
                    TamagawaClaim::Unclaimed => String::new(),
                    TamagawaClaim::OneOf(v) => format!(", c in {v:?}"),
                    TamagawaClaim::PowerOfTwo => ", c a power of 2".to_string(),
                };
                let detail = format!("{} c={}; claimed {}{want_c}", x.kodaira, x.tamagawa, kod_list(&claim.kodaira));
                checks.push(Check::new(name, ok, detail));
            }
        }
    }
    let roots = inst.twist.deg0();
    checks.push(Check::new(
        "I0* at roots of (t - m) f",
        i0star_ok && i0star_places == roots,
        format!("{i0star_places} of {roots} roots carry I0* with admissible c"),
    ));
    checks.push(Check::new("no other bad places", unexpected.is_empty(), unexpected.join(", ")));
    for (a, b) in &pr.equal_tamagawa {
        let find = |pt: &Point| pr.places.iter().position(|c| &c.point == pt).and_then(|i| seen[i]).map(|x| x.tamagawa);
        let (ca, cb) = (find(a), find(b));
        checks.push(Check::new(
            format!("c at {a} equals c at {b}"),
            ca.is_some() && ca == cb,
            format!("{ca:?} vs {cb:?}"),
        ));
    }
    if pr.c_power_of_four {
        let c = &inv.c;
        let ok = c.bits() % 2 == 1 && c.count_ones() == 1;
        checks.push(Check::new("c_E a power of 4", ok, format!("c_E = {c}")));
    }
    if spec.epsilon_law.is_some() {
        let r = law_report(spec, field, w, m, inv.epsilon);
        checks.push(Check::new(
            "epsilon law",
            r.pass,
            format!("computed {}, formula {:?}, claimed {:?}", r.computed, r.formula, r.claimed),
        ));
    }

    // Hypotheses of the criterion.
    let mult = local.iter().any(|x| !x.place.is_infinity() && x.kodaira.is_multiplicative());
    checks.push(Check::new("multiplicative place on A1", mult, ""));
    let i0_count = local.iter().filter(|x| !x.place.is_infinity() && x.kodaira == Kodaira::IStar(0)).count();
    let six_b = 6 * inv.b;
    if pr.waive_hypotheses {
        let status = |holds: bool| if holds { CheckStatus::Waived } else { CheckStatus::Fail };
        checks.push(Check {
            name: "I0* at more than one place of A1".into(),
            status: status(i0_count == 1),
            detail: format!("waived: {i0_count} I0* place(s) on A1"),
        });
        checks.push(Check {
            name: "6B <= N".into(),
            status: status(six_b > inv.n as i64),
            detail: format!("waived: 6B = {six_b}, N = {}", inv.n),
        });
    } else {
        checks.push(Check::new("I0* at more than one place of A1", i0_count >= 2, format!("{i0_count} places")));
        checks.push(Check::new("6B <= N", six_b <= inv.n as i64, format!("6B = {six_b}, N = {}", inv.n)));
    }

    // The claimed condition, for each admissible ell.
    let n_odd = inv.n % 2 == 1;
    let chi_odd = inv.chi.rem_euclid(2) == 1;
    for &ell in ells.iter().filter(|&&l| l != p) {
        let gamma_sq = is_square_mod(ell, &inv.gamma);
        let (ok, detail) = match pr.condition {
            Condition::A => {
                let two_c = is_square_mod(ell, &(&inv.c * 2u32));
                (n_odd && chi_odd && gamma_sq && two_c, format!("N odd {n_odd}, chi odd {chi_odd}, gamma square {gamma_sq}, 2c square {two_c}"))
            }
            Condition::B => {
                let eps = inv.epsilon == 1;
                (!n_odd && !gamma_sq && eps, format!("N even {}, gamma non-square {}, epsilon = 1 {eps}", !n_odd, !gamma_sq))
            }
            Condition::C => {
                let eps = inv.epsilon == 1;
                let c_sq = is_square_mod(ell, &inv.c);
                (
                    !n_odd && chi_odd && gamma_sq && eps && c_sq,
                    format!("N even {}, chi odd {chi_odd}, gamma square {gamma_sq}, epsilon = 1 {eps}, c square {c_sq}", !n_odd),
                )
            }
        };
        checks.push(Check::new(format!("condition {:?} at ell = {ell}", pr.condition), ok, detail));
    }
    cell.invariants = Some(inv);
    cell
}

/// Checks the claimed profile, hypotheses and condition on every `(p, w)` with
/// `p` in `primes` (excluded primes are listed, not checked).
pub fn verify_profile(spec: &FamilySpec, primes: &[u64], opts: &VerifyOptions) -> CriterionReport {
    let mut excluded = Vec::new();
    let mut grid = Vec::new();
    let mut kept = Vec::new();
    for &p in primes {
        match spec.exclusion(p) {
            Some(reason) => excluded.push((p, reason)),
            None => match spec.w_set(p) {
                Ok(ws) => {
                    kept.push(p);
                    let field = PrimeField::new(p).expect("checked prime");
                    grid.extend(ws.into_iter().map(|(w, m)| (field, w, m)));
                }
                Err(e) => excluded.push((p, e.to_string())),
            },
        }
    }
    let mut ells = Vec::new();
    let mut ells_skipped = Vec::new();
    for &ell in &opts.ells {
        if spec.ell_admissible(ell) {
            ells.push(ell);
        } else {
            ells_skipped.push((ell, "outside the primes the condition is stated for".to_string()));
        }
    }
    let cells: Vec<CellReport> = grid.par_iter().map(|&(field, w, m)| verify_cell(spec, field, w, m, &ells)).collect();

    let kod_of = |c: &CellReport| c.invariants.as_ref().map(|i| i.kod.clone());
    let first = cells.first().and_then(kod_of);
    let kodaira_independent = cells.iter().all(|c| kod_of(c).is_some() && kod_of(c) == first);
    let kodaira_independent_by_prime = kept
        .iter()
        .map(|&p| {
            let at_p: Vec<_> = cells.iter().filter(|c| c.p == p).map(kod_of).collect();
            (p, at_p.iter().all(|k| k.is_some() && *k == at_p[0]))
        })
        .collect();
    let vacuous = cells.is_empty();
    let pass = kodaira_independent && cells.iter().all(CellReport::pass);
    CriterionReport {
        family: spec.name.clone(),
        n: spec.n,
        condition: spec.profile.condition,
        primes: primes.to_vec(),
        excluded,
        ells,
        ells_skipped,
        cells,
        kodaira_independent_by_prime,
        kodaira_independent,
        vacuous,
        pass,
    }
}

/// The L-function of one member `E^{c (t - m) f}`.
#[derive(Clone, Debug)]
pub struct FamilyLFunction {
    pub w: u64,
    pub m: u64,
    pub constant: u64,
    pub local: Vec<LocalReductionData>,
    pub invariants: GlobalInvariants,
    pub result: LFunctionResult,
}

/// L-functions of every member over `W(F_p)`, twisted additionally by each
/// constant in `constants`, from one shared trace table.
pub fn family_lfunctions(
    spec: &FamilySpec,
    p: u64,
    constants: &[u64],
    opts: &LFunctionOptions,
) -> Result<Vec<FamilyLFunction>> {
    let ws = spec.w_set(p)?;
    let field = PrimeField::new(p)?;
    let mut table = TraceTable::new(spec.base_curve(field)?, spec.f_mod(field)?)?;
    let mut jobs = Vec::new();
    for &(w, m) in &ws {
        for &c in constants {
            let tw = TwistSpec { constant: c % p, root: Some(m) };
            let curve = table.curve(&tw)?;
            let local = discriminant_places(&curve)?;
            let inv = GlobalInvariants::from_places(p, &local)?;
            jobs.push((w, m, tw, local, inv));
        }
    }
    let Some(n) = jobs.iter().map(|j| j.4.n).max() else { return Ok(Vec::new()) };
    let (mode, r) = match opts.mode {
        Some(mode) => (mode, if mode == crate::lfunction::ExpansionMode::Full { n } else { (n / 2 + 1).min(n) }),
        None => plan_levels(p, n, opts.budget),
    };
    table.ensure_levels(r, opts.seed)?;
    jobs.into_iter()
        .map(|(w, m, tw, local, invariants)| {
            let result = table.lfunction(&tw, &local, &invariants, mode)?;
            Ok(FamilyLFunction { w, m, constant: tw.constant, local, invariants, result })
        })
        .collect()
}
