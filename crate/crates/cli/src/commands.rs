use crate::args::{Cli, Command, GlobalOpts, PrimeList};
use crate::output::{emit, join, pass_fail};
use crate::Verdict;
use anyhow::{bail, Context};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;
use twistfam_core::algebra::{is_prime, Poly, PrimeField};
use twistfam_core::curves::{parse_curve_text, WeierstrassCurve};
use twistfam_core::families::{
    order_certificate, parse_family_text, verify_profile, witness_lfunctions, CheckStatus, CriterionReport, FamilyId,
    FamilySpec, OrderCertificate, VerifyOptions,
};
use twistfam_core::lfunction::{
    bsd_square_class_check, check_functional_equation, lfunction, BsdOutcome, BsdReport, ExpansionMode,
    FunctionalEquationReport, GlobalInvariants, LFunctionOptions, LFunctionPoly, OverlapCheck,
};
use twistfam_core::places::Place;
use twistfam_core::reduction::{discriminant_places, local_reduce, LocalReductionData};

/// Primes used by `verify-family` when `--primes` is absent.
const DEFAULT_FAMILY_PRIMES: std::ops::RangeInclusive<u64> = 5..=61;
/// The `ell` sweep used by the order table when `--ell` is absent.
const DEFAULT_ORDER_ELLS: std::ops::RangeInclusive<u64> = 5..=100;

pub fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    let g = &cli.global;
    match &cli.command {
        Command::Reduce { curve, place } => reduce(g, curve, place.as_deref()),
        Command::Lfunction { curve, check_fe, ell, budget } => lfunction_cmd(g, curve, *check_fe, ell.as_ref(), *budget),
        Command::VerifyFamily { family, n, primes, ell } => verify_family(g, family, *n, primes.as_ref(), ell.as_ref()),
        Command::OrderTable { ell } => order_table(g, ell.as_ref()),
    }
}

fn load_curve(path: &Path) -> anyhow::Result<WeierstrassCurve> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (p, model) = parse_curve_text(&text)?;
    if p < 5 || !is_prime(p) {
        bail!("p must be a prime >= 5, got {p}");
    }
    Ok(model.reduce(PrimeField::new(p)?)?)
}

fn parse_place(field: PrimeField, s: &str) -> anyhow::Result<Place> {
    let s = s.trim();
    if s == "inf" {
        return Ok(Place::Infinity);
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coeffs = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>().with_context(|| format!("bad coefficient `{}`", c.trim())))
            .collect::<anyhow::Result<Vec<_>>>()?;
        return Ok(Place::finite(Poly::from_ints(field, &coeffs))?);
    }
    let a: i64 = s.parse().with_context(|| format!("bad place `{s}`; expected inf, an integer or [c0, c1, ...]"))?;
    Ok(Place::at(field, field.from_i64(a)))
}

fn reduce(g: &GlobalOpts, path: &Path, place: Option<&str>) -> anyhow::Result<Verdict> {
    let curve = load_curve(path)?;
    let records: Vec<LocalReductionData> = match place {
        Some(s) => vec![local_reduce(&curve, &parse_place(curve.field(), s)?)?],
        None => discriminant_places(&curve)?,
    };
    let mut summary = String::new();
    for r in &records {
        writeln!(summary, "{:<10} deg {}  {:<5} c={}  {:?}", r.place.to_string(), r.degree, r.kodaira.to_string(), r.tamagawa, r.reduction_type)?;
    }
    if place.is_some() {
        emit(g, &records[0], &summary)?;
    } else {
        emit(g, &records, &summary)?;
    }
    Ok(Verdict::Pass)
}

#[derive(Serialize)]
struct BsdEntry {
    ell: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<BsdReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

#[derive(Serialize)]
struct LFunctionReport {
    p: u64,
    invariants: GlobalInvariants,
    places: Vec<LocalReductionData>,
    l: LFunctionPoly,
    mode: ExpansionMode,
    overlap: Vec<OverlapCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    functional_equation: Option<FunctionalEquationReport>,
    bsd: Vec<BsdEntry>,
    pass: bool,
}

fn lfunction_cmd(g: &GlobalOpts, path: &Path, check_fe: bool, ells: Option<&PrimeList>, budget: u64) -> anyhow::Result<Verdict> {
    let curve = load_curve(path)?;
    let opts = LFunctionOptions { budget, seed: g.seed, mode: None };
    let (inv, result) = lfunction(&curve, &opts)?;
    let places = discriminant_places(&curve)?;
    let fe = check_fe.then(|| check_functional_equation(&result.poly, inv.epsilon));
    let bsd: Vec<BsdEntry> = ells
        .map(|l| l.0.as_slice())
        .unwrap_or_default()
        .iter()
        .map(|&ell| match bsd_square_class_check(&inv, &result.poly, ell) {
            Ok(r) => BsdEntry { ell, report: Some(r), skipped: None },
            Err(e) => BsdEntry { ell, report: None, skipped: Some(e.to_string()) },
        })
        .collect();
    let pass = result.overlap_ok()
        && fe.as_ref().is_none_or(|f| f.pass)
        && bsd.iter().all(|b| b.report.as_ref().is_none_or(|r| r.outcome != BsdOutcome::Fail));

    let mut s = String::new();
    writeln!(s, "p={}  N={}  chi={}  gamma={}  L={}  B={}  c_E={}  eps={:+}", inv.q, inv.n, inv.chi, inv.gamma, inv.script_l, inv.b, inv.c, inv.epsilon)?;
    let kod: Vec<String> = inv.kod.iter().map(|(k, d)| if *d == 1 { k.to_string() } else { format!("{k}x{d}") }).collect();
    writeln!(s, "bad fibers: {}", kod.join(" "))?;
    writeln!(s, "L(T) = {}   [{:?}]", result.poly, result.mode)?;
    for o in &result.overlap {
        writeln!(s, "overlap a_{}: {}", o.index, pass_fail(o.direct == o.predicted))?;
    }
    if let Some(f) = &fe {
        writeln!(s, "FE: {}, eps={:+}", if f.pass { "pass" } else { "fail" }, f.epsilon)?;
    }
    for b in &bsd {
        match (&b.report, &b.skipped) {
            (Some(r), _) => writeln!(s, "BSD ell={}: {:?}", b.ell, r.outcome)?,
            (None, Some(why)) => writeln!(s, "BSD ell={}: skipped ({why})", b.ell)?,
            _ => {}
        }
    }
    let report = LFunctionReport {
        p: inv.q,
        places,
        l: result.poly.clone(),
        mode: result.mode,
        overlap: result.overlap.clone(),
        functional_equation: fe,
        bsd,
        pass,
        invariants: inv,
    };
    emit(g, &report, &s)?;
    Ok(if pass { Verdict::Pass } else { Verdict::CheckFailed })
}

fn load_family(family: &str, n: Option<u32>) -> anyhow::Result<FamilySpec> {
    if Path::new(family).is_file() {
        if n.is_some() {
            bail!("--n cannot be combined with a family file; set `n` in the file");
        }
        let text = std::fs::read_to_string(family).with_context(|| format!("reading {family}"))?;
        return Ok(parse_family_text(&text)?);
    }
    let id: FamilyId = family.parse()?;
    Ok(FamilySpec::build(id, n.unwrap_or(id.min_n()))?)
}

fn verify_family(
    g: &GlobalOpts,
    family: &str,
    n: Option<u32>,
    primes: Option<&PrimeList>,
    ells: Option<&PrimeList>,
) -> anyhow::Result<Verdict> {
    let spec = load_family(family, n)?;
    let primes: Vec<u64> = match primes {
        Some(p) => p.0.clone(),
        None => DEFAULT_FAMILY_PRIMES.filter(|&p| is_prime(p)).collect(),
    };
    let opts = match ells {
        Some(l) => VerifyOptions { ells: l.0.clone() },
        None => VerifyOptions::default(),
    };
    let report = verify_profile(&spec, &primes, &opts);
    let summary = family_summary(&report)?;
    emit(g, &report, &summary)?;
    Ok(if report.pass { Verdict::Pass } else { Verdict::CheckFailed })
}

fn family_summary(r: &CriterionReport) -> anyhow::Result<String> {
    let mut s = String::new();
    writeln!(s, "family {} n={}  condition {:?}", r.family, r.n, r.condition)?;
    writeln!(s, "primes: {}", join(&r.primes))?;
    for (p, why) in &r.excluded {
        writeln!(s, "  excluded p={p}: {why}")?;
    }
    writeln!(s, "ell: {}", join(&r.ells))?;
    writeln!(s, "{:>5} {:>4} {:>5}  {:<8}", "p", "w", "m", "result")?;
    for c in &r.cells {
        let failed: Vec<&str> = c.checks.iter().filter(|k| k.failed()).map(|k| k.name.as_str()).collect();
        let verdict = if failed.is_empty() { "pass".to_string() } else { format!("FAIL: {}", failed.join(", ")) };
        writeln!(s, "{:>5} {:>4} {:>5}  {verdict}", c.p, c.w, c.m)?;
    }
    for (p, ok) in &r.kodaira_independent_by_prime {
        if !ok {
            writeln!(s, "Kodaira symbols vary with w at p={p}")?;
        }
    }
    let waived = r.waivers();
    if !waived.is_empty() {
        writeln!(s, "waived: {}", waived.join(", "))?;
        for c in r.cells.iter().take(1) {
            for k in c.checks.iter().filter(|k| k.status == CheckStatus::Waived) {
                writeln!(s, "  {}: {}", k.name, k.detail)?;
            }
        }
    }
    if r.cells.is_empty() {
        writeln!(s, "vacuous: no members to check (every prime excluded or W(F_p) empty)")?;
    }
    writeln!(s, "{}  ({} members, {} failed checks)", pass_fail(r.pass), r.cells.len(), r.failures().count())?;
    Ok(s)
}

fn order_table(g: &GlobalOpts, ells: Option<&PrimeList>) -> anyhow::Result<Verdict> {
    let ells: Vec<u64> = match ells {
        Some(l) => l.0.clone(),
        None => DEFAULT_ORDER_ELLS.filter(|&l| is_prime(l)).collect(),
    };
    let witnesses = witness_lfunctions()?;
    let certs: Vec<OrderCertificate> = ells.iter().map(|&ell| order_certificate(ell, &witnesses)).collect();
    let mut s = String::new();
    writeln!(s, "{:>4}  {:<22} {:<22} certified by", "ell", "E_2/F_5", "E_3/F_7")?;
    for c in &certs {
        let cell = |i: usize| {
            let o = &c.outcomes[i];
            if !o.applicable {
                "n/a".to_string()
            } else if o.failures.is_empty() {
                "pass".to_string()
            } else {
                format!("A^e = I at e={}", join(&o.failures))
            }
        };
        let by = c.certified_by.map_or("NONE".to_string(), |w| format!("E_{}/F_{}", w.m, w.p));
        writeln!(s, "{:>4}  {:<22} {:<22} {by}", c.ell, cell(0), cell(1))?;
    }
    let pass = certs.iter().all(|c| c.certified_by.is_some());
    writeln!(s, "{}", pass_fail(pass))?;
    emit(g, &certs, &s)?;
    Ok(if pass { Verdict::Pass } else { Verdict::CheckFailed })
}
