use super::{
    ensure_h_degree, one, rat, Condition, EllRule, EpsilonLaw, ExpectedProfile, FamilySpec, LegendreFactor,
    PlaceClaim, Point, RationalMap, RootSequence, TamagawaClaim, ZPoly,
};
use crate::error::{Error, Result};
use crate::reduction::Kodaira;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

/// The thirteen families, by the residue of `N` they realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    IntroN5,
    Odd1Mod8,
    Odd3Mod8,
    Odd5Mod8,
    Odd7Mod8,
    Even0Mod8,
    Even2Mod8,
    Even4Mod8,
    Even6Mod8,
    Case1TwoNonsquare,
    Case2ThreeNonsquare,
    Case3FiveNonsquare,
    Case4SevenNonsquare,
}

impl FamilyId {
    pub const ALL: [Self; 13] = [
        Self::IntroN5,
        Self::Odd1Mod8,
        Self::Odd3Mod8,
        Self::Odd5Mod8,
        Self::Odd7Mod8,
        Self::Even0Mod8,
        Self::Even2Mod8,
        Self::Even4Mod8,
        Self::Even6Mod8,
        Self::Case1TwoNonsquare,
        Self::Case2ThreeNonsquare,
        Self::Case3FiveNonsquare,
        Self::Case4SevenNonsquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::IntroN5 => "intro_N5",
            Self::Odd1Mod8 => "odd_1mod8",
            Self::Odd3Mod8 => "odd_3mod8",
            Self::Odd5Mod8 => "odd_5mod8",
            Self::Odd7Mod8 => "odd_7mod8",
            Self::Even0Mod8 => "even_0mod8",
            Self::Even2Mod8 => "even_2mod8",
            Self::Even4Mod8 => "even_4mod8",
            Self::Even6Mod8 => "even_6mod8",
            Self::Case1TwoNonsquare => "case1_2ns",
            Self::Case2ThreeNonsquare => "case2_3ns",
            Self::Case3FiveNonsquare => "case3_5ns",
            Self::Case4SevenNonsquare => "case4_7ns",
        }
    }

    /// Smallest admissible parameter.
    pub fn min_n(self) -> u32 {
        match self {
            Self::IntroN5 | Self::Odd7Mod8 | Self::Even6Mod8 => 0,
            Self::Odd1Mod8 | Self::Odd3Mod8 | Self::Odd5Mod8 => 1,
            Self::Even0Mod8 | Self::Even2Mod8 | Self::Even4Mod8 => 1,
            _ => 2,
        }
    }

    /// Largest admissible parameter, if bounded.
    pub fn max_n(self) -> Option<u32> {
        (self == Self::IntroN5).then_some(0)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl std::str::FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

fn z(c: &[i64]) -> ZPoly {
    ZPoly::from_i64(c)
}

/// `c * prod (t - a_i)^{e_i}`, written with integer linear factors `(u t + v)`.
fn prod(c: i64, factors: &[(&[i64], u32)]) -> ZPoly {
    factors.iter().fold(z(&[c]), |acc, (f, e)| acc.mul(&z(f).pow(*e)))
}

fn claim(point: Point, kodaira: &[Kodaira], tamagawa: TamagawaClaim) -> PlaceClaim {
    PlaceClaim { point, kodaira: kodaira.to_vec(), tamagawa }
}

fn exactly(c: u32) -> TamagawaClaim {
    TamagawaClaim::exactly(c)
}

fn one_or_four() -> TamagawaClaim {
    TamagawaClaim::OneOf(vec![1, 4])
}

fn integers(n: i64) -> Option<BigRational> {
    Some(BigRational::from_integer(n.into()))
}

fn minus_one(exp: usize) -> LegendreFactor {
    LegendreFactor::constant(-1, exp)
}

struct Draft {
    base: (ZPoly, ZPoly, ZPoly),
    h: RationalMap,
    roots: RootSequence,
    profile: ExpectedProfile,
    law: Option<EpsilonLaw>,
    ell_rule: EllRule,
}

#[allow(clippy::too_many_arguments)]
fn profile(
    n: usize,
    chi: Option<i64>,
    gamma: u64,
    script_l: u64,
    b: i64,
    places: Vec<PlaceClaim>,
    i0star: TamagawaClaim,
    condition: Condition,
) -> ExpectedProfile {
    ExpectedProfile {
        n,
        chi,
        gamma,
        script_l,
        b,
        places,
        i0star_tamagawa: i0star,
        equal_tamagawa: Vec::new(),
        c_power_of_four: condition == Condition::C,
        condition,
        waive_hypotheses: false,
    }
}

fn law(sign: i8, factors: Vec<LegendreFactor>, claimed: Option<i8>) -> Option<EpsilonLaw> {
    Some(EpsilonLaw { sign, factors, claimed })
}

/// `(c * (a + b m) * f(s))`.
fn lm(c: i64, a: BigRational, b: i64, s: Option<BigRational>) -> LegendreFactor {
    LegendreFactor::at_m(c, a, b, s)
}

pub(super) fn build(id: FamilyId, n: u32) -> Result<FamilySpec> {
    if n < id.min_n() || id.max_n().is_some_and(|m| n > m) {
        return Err(Error::Precondition(format!("{id} is defined for n >= {}{}", id.min_n(), match id.max_n() {
            Some(m) => format!(" and n <= {m}"),
            None => String::new(),
        })));
    }
    let nn = n as usize;
    let ni = n as i64;
    use Kodaira::*;
    let inf = || Point::Infinity;
    let pt = Point::int;
    let zero = BigRational::zero;
    let identity = RationalMap::identity();
    let g_standard = || RationalMap::from_i64(&[1], &[1, 0, 1]);
    let seq = |map: RationalMap, shift: i64, count: usize| RootSequence { map, shift, count };

    let intro_base = || (z(&[]), prod(3, &[(&[-1, 0, 1], 3)]), prod(-2, &[(&[-1, 0, 1], 5)]));
    let intro_h = || RationalMap::from_i64(&[3, 0, -1], &[3, 0, 1]);
    let intro_places = || {
        vec![
            claim(inf(), &[IIStar], exactly(1)),
            claim(pt(0), &[I(2)], exactly(2)),
            claim(pt(1), &[IIIStar], exactly(2)),
            claim(pt(-1), &[IIIStar], exactly(2)),
        ]
    };

    let d = match id {
        FamilyId::IntroN5 => {
            let mut pr = profile(5, Some(3), 1, 1, 2, intro_places(), one_or_four(), Condition::A);
            pr.waive_hypotheses = true;
            Draft {
                base: intro_base(),
                h: intro_h()?,
                roots: seq(intro_h()?, 0, 0),
                profile: pr,
                law: law(-1, vec![lm(-3, zero(), 1, None)], None),
                ell_rule: EllRule::default(),
            }
        }
        FamilyId::Odd5Mod8 => Draft {
            base: intro_base(),
            h: intro_h()?,
            roots: seq(intro_h()?, 0, 4 * nn),
            profile: profile(8 * nn + 5, Some(2 * ni + 3), 1, 1, 2, intro_places(), one_or_four(), Condition::A),
            law: None,
            ell_rule: EllRule::default(),
        },
        FamilyId::Odd1Mod8 => Draft {
            base: (z(&[-1, -1]), z(&[0, 1]), z(&[])),
            h: identity.clone(),
            roots: seq(identity, 1, 4 * nn),
            profile: profile(
                8 * nn + 1,
                Some(2 * ni + 1),
                1,
                1,
                0,
                vec![claim(inf(), &[I(2)], exactly(2)), claim(pt(0), &[I(2)], exactly(2)), claim(pt(1), &[I(2)], exactly(2))],
                exactly(4),
                Condition::A,
            ),
            law: None,
            ell_rule: EllRule::default(),
        },
        FamilyId::Odd3Mod8 => {
            let h = || RationalMap::from_i64(&[0, 0, 3], &[1, 0, 3]);
            Draft {
                base: (z(&[]), z(&[0, -3]), z(&[0, 0, 2])),
                h: h()?,
                roots: seq(h()?, 0, 4 * nn),
                profile: profile(
                    8 * nn + 3,
                    Some(2 * ni + 1),
                    1,
                    1,
                    1,
                    vec![claim(inf(), &[II], exactly(1)), claim(pt(0), &[III], exactly(2)), claim(pt(1), &[I(1)], exactly(1))],
                    one_or_four(),
                    Condition::A,
                ),
                law: None,
                ell_rule: EllRule::default(),
            }
        }
        FamilyId::Odd7Mod8 => Draft {
            base: (z(&[0, 1, 1]), z(&[0, 0, 0, 1]), z(&[])),
            h: identity.clone(),
            roots: seq(identity, 1, 4 * nn + 2),
            profile: profile(
                8 * nn + 7,
                Some(2 * ni + 3),
                1,
                1,
                1,
                vec![
                    claim(inf(), &[IStar(2)], exactly(4)),
                    claim(pt(0), &[IStar(2)], exactly(4)),
                    claim(pt(1), &[I(2)], exactly(2)),
                ],
                exactly(4),
                Condition::A,
            ),
            law: None,
            ell_rule: EllRule::default(),
        },
        FamilyId::Even0Mod8 => {
            let h = || RationalMap::from_i64(&[0, 0, 4], &[1, 0, 2, 0, 1]);
            Draft {
                base: (
                    z(&[]),
                    prod(-3, &[(&[-1, 1], 3), (&[-4, 1], 1)]),
                    prod(-2, &[(&[-1, 1], 5), (&[8, 1], 1)]),
                ),
                h: h()?,
                roots: seq(h()?, 1, 4 * nn - 1),
                profile: profile(
                    8 * nn,
                    Some(2 * ni + 1),
                    1,
                    1,
                    1,
                    vec![claim(inf(), &[I(1)], exactly(1)), claim(pt(0), &[I(2)], exactly(2)), claim(pt(1), &[IIIStar], exactly(2))],
                    exactly(4),
                    Condition::C,
                ),
                law: law(
                    1,
                    vec![lm(-6, zero(), 1, integers(0)), LegendreFactor::constant(-3, 1), LegendreFactor::constant(-2, 1), minus_one(4 * nn)],
                    Some(1),
                ),
                ell_rule: EllRule::default(),
            }
        }
        FamilyId::Even2Mod8 => {
            let h = || RationalMap::from_i64(&[-1, 0, 2, 0, -1], &[0, 0, 4]);
            Draft {
                base: (z(&[]), prod(-3, &[(&[-1, 1], 1), (&[-4, 1], 1)]), prod(-2, &[(&[-1, 1], 2), (&[8, 1], 1)])),
                h: h()?,
                roots: seq(h()?, 1, 4 * nn),
                profile: profile(
                    8 * nn + 2,
                    Some(2 * ni + 1),
                    1,
                    1,
                    1,
                    vec![claim(inf(), &[I(1)], exactly(1)), claim(pt(0), &[I(2)], exactly(2)), claim(pt(1), &[III], exactly(2))],
                    exactly(4),
                    Condition::C,
                ),
                law: law(
                    1,
                    vec![LegendreFactor::constant(-3, 1), lm(6, zero(), 1, integers(0)), LegendreFactor::constant(-2, 1), minus_one(4 * nn + 1)],
                    Some(1),
                ),
                ell_rule: EllRule::default(),
            }
        }
        FamilyId::Even4Mod8 => {
            let h = || RationalMap::from_i64(&[0, 0, -3], &[1]);
            Draft {
                base: (
                    z(&[]),
                    prod(-3, &[(&[-1, 1], 1), (&[-9, 1], 1)]),
                    prod(-2, &[(&[-1, 1], 1), (&[-3, 1], 1), (&[-9, 1], 1)]),
                ),
                h: h()?,
                roots: seq(h()?, 0, 4 * nn),
                profile: profile(
                    8 * nn + 4,
                    Some(2 * ni + 1),
                    1,
                    1,
                    2,
                    vec![
                        claim(inf(), &[I(1)], exactly(1)),
                        claim(pt(0), &[I(1)], exactly(1)),
                        claim(pt(1), &[II], exactly(1)),
                        claim(pt(9), &[II], exactly(1)),
                    ],
                    one_or_four(),
                    Condition::C,
                ),
                law: law(
                    1,
                    vec![LegendreFactor::constant(-3, 1), lm(-1, zero(), 1, integers(0)), minus_one(2), minus_one(4 * nn + 1)],
                    Some(1),
                ),
                ell_rule: EllRule::default(),
            }
        }
        FamilyId::Even6Mod8 => {
            let h = || RationalMap::from_i64(&[1, 0, 1], &[0, 2]);
            let mut pr = profile(
                8 * nn + 6,
                Some(2 * ni + 3),
                1,
                1,
                1,
                vec![
                    claim(pt(1), &[I(2)], exactly(2)),
                    claim(pt(-1), &[I(2)], exactly(2)),
                    claim(pt(0), &[IStar(4)], TamagawaClaim::PowerOfTwo),
                    claim(inf(), &[IStar(4)], TamagawaClaim::PowerOfTwo),
                ],
                exactly(4),
                Condition::C,
            );
            pr.equal_tamagawa.push((pt(0), inf()));
            Draft {
                base: (
                    z(&[]),
                    z(&[0, 0, -3]).mul(&z(&[1, 0, -1, 0, 1])),
                    z(&[0, 0, 0, 1]).mul(&z(&[2, 0, -3, 0, -3, 0, 2])),
                ),
                h: h()?,
                roots: seq(h()?, 1, 4 * nn + 1),
                profile: pr,
                law: law(
                    1,
                    vec![lm(-3, one(), -1, integers(1)), lm(3, -one(), -1, integers(-1)), minus_one(2), minus_one(4 * nn + 1)],
                    Some(1),
                ),
                ell_rule: EllRule::default(),
            }
        }
        FamilyId::Case1TwoNonsquare => {
            let h = RationalMap::from_i64(&[1], &[1, 0, 2])?;
            Draft {
                base: (
                    z(&[]),
                    prod(3, &[(&[-1, 1], 1), (&[-4, 1], 1), (&[-4, 3], 1)]),
                    prod(-4, &[(&[-1, 1], 2), (&[32, -32, 9], 1)]),
                ),
                h,
                roots: seq(g_standard()?, 0, nn - 1),
                profile: profile(
                    2 * nn + 2,
                    None,
                    2,
                    1,
                    1,
                    vec![
                        claim(inf(), &[III, IIIStar], TamagawaClaim::Unclaimed),
                        claim(pt(1), &[III], TamagawaClaim::Unclaimed),
                        claim(pt(0), &[I(4)], TamagawaClaim::Unclaimed),
                        claim(pt(2), &[I(2)], TamagawaClaim::Unclaimed),
                    ],
                    TamagawaClaim::Unclaimed,
                    Condition::B,
                ),
                law: law(
                    1,
                    vec![
                        LegendreFactor::constant(-2, 2),
                        lm(3, zero(), 1, integers(0)),
                        lm(-6, one(), -1, integers(1)),
                        minus_one(nn),
                    ],
                    Some(1),
                ),
                ell_rule: EllRule { nonsquares: vec![2], squares: vec![] },
            }
        }
        FamilyId::Case2ThreeNonsquare => {
            let h = RationalMap::from_i64(&[1], &[1, 0, 2])?;
            Draft {
                base: (
                    z(&[]),
                    prod(-3, &[(&[-1, 28], 1), (&[-16, 112, 147], 1)]),
                    prod(-2, &[(&[-1, 28], 1), (&[-64, 1568, -3430, 21609], 1)]),
                ),
                h,
                roots: seq(g_standard()?, 0, nn - 1),
                profile: profile(
                    2 * nn + 2,
                    None,
                    6,
                    1,
                    1,
                    vec![
                        claim(inf(), &[III, IIIStar], TamagawaClaim::Unclaimed),
                        claim(Point::ratio(1, 28), &[II], TamagawaClaim::Unclaimed),
                        claim(pt(0), &[I(4)], TamagawaClaim::Unclaimed),
                        claim(pt(1), &[I(3)], TamagawaClaim::Unclaimed),
                    ],
                    TamagawaClaim::Unclaimed,
                    Condition::B,
                ),
                law: law(
                    1,
                    vec![
                        LegendreFactor::constant(-1, 1),
                        LegendreFactor::constant(-2, 1),
                        lm(3, zero(), 1, integers(0)),
                        lm(-3, one(), -1, integers(1)),
                        minus_one(nn),
                    ],
                    Some(1),
                ),
                ell_rule: EllRule { nonsquares: vec![3], squares: vec![2] },
            }
        }
        FamilyId::Case3FiveNonsquare => {
            let even = n.is_multiple_of(2);
            let k = if even { 15 } else { 5 };
            let h = RationalMap::from_i64(&[k], &[k, 0, -1])?;
            Draft {
                base: (
                    z(&[]),
                    z(&[-256, 96, 135]).scale(3),
                    z(&[4096, -2304, -3024, 621, 486]).scale(-2),
                ),
                h,
                roots: seq(g_standard()?, 0, nn - 1),
                profile: profile(
                    2 * nn + 2,
                    None,
                    k as u64,
                    5,
                    1,
                    vec![
                        claim(inf(), &[if even { IV } else { IIStar }], TamagawaClaim::Unclaimed),
                        claim(pt(0), &[I(5)], TamagawaClaim::Unclaimed),
                        claim(pt(1), &[I(1)], TamagawaClaim::Unclaimed),
                        claim(Point::ratio(-16, 9), &[II], TamagawaClaim::Unclaimed),
                    ],
                    TamagawaClaim::Unclaimed,
                    Condition::B,
                ),
                law: law(
                    1,
                    vec![
                        LegendreFactor::constant(if even { -3 } else { -1 }, 1),
                        lm(3, zero(), 1, integers(0)),
                        lm(15, one(), -1, integers(1)),
                        minus_one(1),
                        minus_one(nn),
                    ],
                    Some(1),
                ),
                ell_rule: EllRule { nonsquares: vec![5], squares: vec![2, 3] },
            }
        }
        FamilyId::Case4SevenNonsquare => {
            let even = n.is_multiple_of(2);
            let h = if even {
                RationalMap::from_i64(&[63], &[-56, 0, 4])?
            } else {
                RationalMap::from_i64(&[189], &[-168, 0, 4])?
            };
            let s = rat(-9, 8);
            let mut factors = if even {
                vec![minus_one(2)]
            } else {
                vec![LegendreFactor::constant(-3, 1), minus_one(1)]
            };
            factors.extend([lm(2, zero(), 1, integers(0)), lm(7, s.clone(), -1, Some(s)), minus_one(nn)]);
            Draft {
                base: (
                    z(&[]),
                    prod(-12, &[(&[4, 9], 2), (&[9, 36, 42, 14], 1)]),
                    prod(-24, &[(&[4, 9], 3), (&[18, 108, 234, 222, 87, 8], 1)]),
                ),
                h,
                roots: seq(RationalMap::from_i64(&[-9], &[8, 0, 8])?, 0, nn - 1),
                profile: profile(
                    2 * nn + 2,
                    None,
                    if even { 14 } else { 42 },
                    7,
                    1,
                    vec![
                        claim(inf(), &[if even { II } else { IVStar }], TamagawaClaim::Unclaimed),
                        claim(Point::ratio(-4, 9), &[IStar(1)], TamagawaClaim::Unclaimed),
                        claim(pt(0), &[I(7)], TamagawaClaim::Unclaimed),
                        claim(Point::ratio(-9, 8), &[I(2)], TamagawaClaim::Unclaimed),
                    ],
                    TamagawaClaim::Unclaimed,
                    Condition::B,
                ),
                law: law(1, factors, Some(1)),
                ell_rule: EllRule { nonsquares: vec![7], squares: vec![2, 3, 5] },
            }
        }
    };
    ensure_h_degree(&d.h)?;
    Ok(FamilySpec {
        name: id.name().to_string(),
        n,
        base: d.base,
        h: d.h,
        f_roots: d.roots,
        profile: d.profile,
        epsilon_law: d.law,
        ell_rule: d.ell_rule,
    })
}
