//! Text format for user-supplied families.
//!
//! ```text
//! # lines are `key = value`; `#` starts a comment
//! name = my_family
//! n = 1
//! a2 = [-1, -1]            # dense ascending integer coefficients in t
//! a4 = [0, 1]
//! a6 = []
//! h = [0, 1] / [1]         # numerator / denominator in u
//! f = [0, 1] / [1] shift 1 count 4   # roots map(i + shift), i = 1..=count
//! place inf = I2 c=2       # claimed symbol(s), `|`-separated; c=1,4 or c=pow2
//! place 0 = I2 c=2
//! place 1 = I2 c=2
//! i0star_c = 4
//! N = 9
//! chi = 3
//! gamma = 1
//! L = 1
//! B = 0
//! condition = A
//! ell_nonsquares = 2       # optional restrictions on ell
//! ell_squares =
//! equal_c = 0, inf         # optional pair with equal Tamagawa numbers
//! waive_hypotheses = false
//! ```

use super::{
    ensure_h_degree, Condition, EllRule, ExpectedProfile, FamilySpec, PlaceClaim, Point, RationalMap, RootSequence,
    TamagawaClaim, ZPoly,
};
use crate::error::{Error, Result};
use crate::reduction::Kodaira;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_zpoly(s: &str) -> Result<ZPoly> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err(format!("expected a bracketed list, got `{s}`")))?;
    let coeffs = inner
        .split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| c.parse::<BigInt>().map_err(|_| err(format!("bad integer `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    let mut p = ZPoly(coeffs);
    p.trim();
    Ok(p)
}

fn parse_map(s: &str) -> Result<RationalMap> {
    let (a, b) = s.split_once('/').ok_or_else(|| err(format!("expected `[..] / [..]`, got `{s}`")))?;
    RationalMap::new(parse_zpoly(a)?, parse_zpoly(b)?)
}

fn parse_point(s: &str) -> Result<Point> {
    let s = s.trim();
    if s == "inf" {
        return Ok(Point::Infinity);
    }
    s.parse::<BigRational>().map(Point::Finite).map_err(|_| err(format!("bad point `{s}`")))
}

fn parse_tamagawa(s: &str) -> Result<TamagawaClaim> {
    if s.trim() == "pow2" {
        return Ok(TamagawaClaim::PowerOfTwo);
    }
    let v = s
        .split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| err(format!("bad Tamagawa value `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TamagawaClaim::OneOf(v))
}

fn parse_place(key_rest: &str, value: &str) -> Result<PlaceClaim> {
    let point = parse_point(key_rest)?;
    let mut parts = value.split_whitespace();
    let symbols = parts.next().ok_or_else(|| err("place claim needs a Kodaira symbol"))?;
    let kodaira = symbols.split('|').map(str::parse::<Kodaira>).collect::<Result<Vec<_>>>()?;
    let tamagawa = match parts.next() {
        None => TamagawaClaim::Unclaimed,
        Some(c) => parse_tamagawa(c.strip_prefix("c=").ok_or_else(|| err(format!("expected c=..., got `{c}`")))?)?,
    };
    Ok(PlaceClaim { point, kodaira, tamagawa })
}

fn parse_roots(s: &str) -> Result<RootSequence> {
    let s = s.trim();
    if s == "none" {
        return Ok(RootSequence { map: RationalMap::identity(), shift: 0, count: 0 });
    }
    let shift_at = s.find("shift").ok_or_else(|| err("f needs `shift <s> count <k>`"))?;
    let map = parse_map(&s[..shift_at])?;
    let words: Vec<&str> = s[shift_at..].split_whitespace().collect();
    match words.as_slice() {
        ["shift", sh, "count", k] => Ok(RootSequence {
            map,
            shift: sh.parse().map_err(|_| err(format!("bad shift `{sh}`")))?,
            count: k.parse().map_err(|_| err(format!("bad count `{k}`")))?,
        }),
        _ => Err(err(format!("bad f specification `{s}`"))),
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| c.parse().map_err(|_| err(format!("bad integer `{c}`"))))
        .collect()
}

/// Reads a family description in the format documented on this module.
pub fn parse_family_text(text: &str) -> Result<FamilySpec> {
    let mut kv: HashMap<String, String> = HashMap::new();
    let mut places = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| err(format!("line {}: expected `key = value`", lineno + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if let Some(pt) = k.strip_prefix("place ") {
            places.push(parse_place(pt, v)?);
        } else if kv.insert(k.to_string(), v.to_string()).is_some() {
            return Err(err(format!("duplicate key `{k}`")));
        }
    }
    let get = |k: &str| kv.get(k).map(String::as_str).ok_or_else(|| err(format!("missing key `{k}`")));
    let num = |k: &str| -> Result<i64> { get(k)?.parse().map_err(|_| err(format!("`{k}` must be an integer"))) };
    let h = parse_map(get("h")?)?;
    ensure_h_degree(&h)?;
    let equal_tamagawa = match kv.get("equal_c") {
        None => Vec::new(),
        Some(v) => {
            let (a, b) = v.split_once(',').ok_or_else(|| err("equal_c needs two points"))?;
            vec![(parse_point(a)?, parse_point(b)?)]
        }
    };
    let condition: Condition = get("condition")?.parse()?;
    let profile = ExpectedProfile {
        n: usize::try_from(num("N")?).map_err(|_| err("N must be non-negative"))?,
        chi: kv.contains_key("chi").then(|| num("chi")).transpose()?,
        gamma: num("gamma")? as u64,
        script_l: num("L")? as u64,
        b: num("B")?,
        places,
        i0star_tamagawa: kv.get("i0star_c").map(|v| parse_tamagawa(v)).transpose()?.unwrap_or(TamagawaClaim::Unclaimed),
        equal_tamagawa,
        c_power_of_four: condition == Condition::C,
        condition,
        waive_hypotheses: kv.get("waive_hypotheses").is_some_and(|v| v == "true"),
    };
    Ok(FamilySpec {
        name: get("name")?.to_string(),
        n: kv.get("n").map(|v| v.parse().map_err(|_| err("n must be a non-negative integer"))).transpose()?.unwrap_or(0),
        base: (parse_zpoly(get("a2")?)?, parse_zpoly(get("a4")?)?, parse_zpoly(get("a6")?)?),
        h,
        f_roots: kv.get("f").map(|v| parse_roots(v)).transpose()?.unwrap_or(RootSequence {
            map: RationalMap::identity(),
            shift: 0,
            count: 0,
        }),
        profile,
        epsilon_law: None,
        ell_rule: EllRule {
            nonsquares: kv.get("ell_nonsquares").map(|v| parse_list(v)).transpose()?.unwrap_or_default(),
            squares: kv.get("ell_squares").map(|v| parse_list(v)).transpose()?.unwrap_or_default(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ODD_1: &str = "
        name = odd_1mod8_file
        n = 1
        a2 = [-1, -1]
        a4 = [0, 1]
        a6 = []
        h = [0, 1] / [1]
        f = [0, 1] / [1] shift 1 count 4
        place inf = I2 c=2
        place 0 = I2 c=2
        place 1 = I2 c=2
        i0star_c = 4
        N = 9
        chi = 3
        gamma = 1
        L = 1
        B = 0
        condition = A
    ";

    #[test]
    fn parses_the_documented_example() {
        let spec = parse_family_text(ODD_1).unwrap();
        let built = FamilySpec::build(super::super::FamilyId::Odd1Mod8, 1).unwrap();
        assert_eq!(spec.base, built.base);
        assert_eq!(spec.h, built.h);
        assert_eq!(spec.f_roots, built.f_roots);
        assert_eq!(spec.profile, built.profile);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_family_text("name = x").is_err());
        assert!(parse_family_text(&ODD_1.replace("[0, 1] / [1]\n", "[0, 1]\n")).is_err());
        assert!(parse_family_text(&ODD_1.replace("I2 c=2", "I9x c=2")).is_err());
        assert!(parse_family_text(&format!("{ODD_1}\nN = 3")).is_err());
        let deg5 = ODD_1.replace("h = [0, 1] / [1]", "h = [0, 0, 0, 0, 0, 1] / [1]");
        assert!(parse_family_text(&deg5).is_err());
    }
}
