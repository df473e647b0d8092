//! System configuration `ΛΔu = ∇F(u, λ)` on a geodesic ball: dimension,
//! radius and the signature of the diagonal matrix `Λ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Radius of the geodesic ball `B(γ) ⊂ Sⁿ`.
///
/// The hemisphere is a distinct variant selected only by the exact token
/// `hemisphere`; a floating value equal to `π/2` stays on the numerical path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gamma {
    Hemisphere,
    Radians(f64),
}

impl Gamma {
    pub fn radians(self) -> f64 {
        match self {
            Gamma::Hemisphere => PI / 2.0,
            Gamma::Radians(g) => g,
        }
    }

    pub fn is_hemisphere(self) -> bool {
        matches!(self, Gamma::Hemisphere)
    }

    /// Checks `0 < γ < π`.
    pub fn validate(self) -> Result<Self> {
        let g = self.radians();
        if g.is_finite() && g > 0.0 && g < PI {
            Ok(self)
        } else {
            Err(Error::RadiusOutOfRange(g))
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma::Hemisphere => f.write_str("hemisphere"),
            Gamma::Radians(g) => write!(f, "{g}"),
        }
    }
}

/// Accepts `hemisphere`, rational multiples of π (`pi`, `pi/3`, `2pi/5`,
/// `3*pi/4`) and plain decimals.
impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "hemisphere" {
            return Ok(Gamma::Hemisphere);
        }
        let bad = || Error::InvalidArgument(format!("cannot parse radius {s:?}"));
        let value = if let Some(pos) = t.find("pi") {
            let coef = t[..pos].trim().trim_end_matches('*').trim();
            let num: f64 = if coef.is_empty() {
                1.0
            } else {
                coef.parse().map_err(|_| bad())?
            };
            let rest = t[pos + 2..].trim();
            let den: f64 = if rest.is_empty() {
                1.0
            } else {
                rest.strip_prefix('/')
                    .ok_or_else(bad)?
                    .trim()
                    .parse()
                    .map_err(|_| bad())?
            };
            num * PI / den
        } else {
            t.parse::<f64>().map_err(|_| bad())?
        };
        Gamma::Radians(value).validate()
    }
}

impl Serialize for Gamma {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Gamma::Hemisphere => serializer.serialize_str("hemisphere"),
            Gamma::Radians(g) => serializer.serialize_f64(*g),
        }
    }
}

impl<'de> Deserialize<'de> for Gamma {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Token(String),
            Value(f64),
        }
        match Wire::deserialize(deserializer)? {
            Wire::Token(t) if t == "hemisphere" => Ok(Gamma::Hemisphere),
            Wire::Token(t) => Err(serde::de::Error::custom(format!(
                "unknown radius token {t:?}"
            ))),
            Wire::Value(g) => Ok(Gamma::Radians(g)),
        }
    }
}

/// Side of the trivial line a bifurcation parameter sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "positive" | "pos" => Ok(Sign::Positive),
            "-" | "negative" | "neg" => Ok(Sign::Negative),
            other => Err(Error::InvalidArgument(format!("unknown sign {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `n`, `γ` and the signature `(p₋, p₊)` of `Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub n: u32,
    pub gamma: Gamma,
    pub p_minus: u32,
    pub p_plus: u32,
}

impl SystemConfig {
    pub fn new(n: u32, gamma: Gamma, p_minus: u32, p_plus: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        gamma.validate()?;
        if p_minus == 0 && p_plus == 0 {
            return Err(Error::Signature("p_minus + p_plus must be positive".into()));
        }
        Ok(Self {
            n,
            gamma,
            p_minus,
            p_plus,
        })
    }

    pub fn hemisphere(n: u32, p_minus: u32, p_plus: u32) -> Result<Self> {
        Self::new(n, Gamma::Hemisphere, p_minus, p_plus)
    }

    /// Number of components of `Λ` relevant on the given side: `p₋` for
    /// positive parameters, `p₊` for negative ones.
    pub fn count_for(&self, sign: Sign) -> u32 {
        match sign {
            Sign::Positive => self.p_minus,
            Sign::Negative => self.p_plus,
        }
    }

    pub fn require_side(&self, sign: Sign) -> Result<u32> {
        match self.count_for(sign) {
            0 => Err(Error::Signature(match sign {
                Sign::Positive => "positive parameters need p_minus > 0".into(),
                Sign::Negative => "negative parameters need p_plus > 0".into(),
            })),
            p => Ok(p),
        }
    }
}
