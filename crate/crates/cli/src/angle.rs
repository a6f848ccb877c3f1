//! Angles given as decimal radians or as multiples of π ("pi/12", "3pi/8",
//! "2*pi/3", "-pi").

use std::f64::consts::PI;

use serde::{Deserialize, Deserializer};

use crate::CliError;

pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Validation(format!("cannot parse angle `{s}`"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if t.is_empty() {
        return Err(bad());
    }
    let value = match t.find("pi").or_else(|| t.find('π')) {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some(at) => {
            let marker = if t[at..].starts_with("pi") { 2 } else { 'π'.len_utf8() };
            let coef = t[..at].strip_suffix('*').unwrap_or(&t[..at]);
            let coef = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = &t[at + marker..];
            let div = match rest {
                "" => 1.0,
                r => r
                    .strip_prefix('/')
                    .ok_or_else(bad)?
                    .parse::<f64>()
                    .map_err(|_| bad())?,
            };
            if div == 0.0 {
                return Err(bad());
            }
            coef * PI / div
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Comma-separated list of angles.
pub fn parse_angle_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(parse_angle).collect()
}

/// Config entry: a number or an angle string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Angle(x)),
            Raw::Text(s) => parse_angle(&s).map(Angle).map_err(serde::de::Error::custom),
        }
    }
}
