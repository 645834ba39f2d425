//! Environments: where a game form's outcomes lead in a surrounding game.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use cspg_core::error::{domain, Result};
use cspg_core::Q;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::order::{even_ceil_val, odd_ceil_val};

/// Where an outcome goes: back to the initial state, through the color
/// checkpoint k_i, or to a stop with a fixed value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    QInit,
    K(usize),
    Value(Q),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::QInit => write!(f, "qinit"),
            Target::K(i) => write!(f, "k{i}"),
            Target::Value(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Target {
    type Err = cspg_core::Error;

    fn from_str(s: &str) -> Result<Target> {
        if s == "qinit" {
            return Ok(Target::QInit);
        }
        if let Some(rest) = s.strip_prefix('k') {
            if let Ok(i) = rest.parse::<usize>() {
                return Ok(Target::K(i));
            }
        }
        let v: Q = s
            .parse()
            .map_err(|_| domain(format!("bad target {s:?}: expected qinit, k<i> or a rational")))?;
        if !v.in_unit() {
            return Err(domain(format!("target value {v} outside [0,1]")));
        }
        Ok(Target::Value(v))
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Target, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// An environment <c, e, p>: the initial state's color c, the largest
/// checkpoint color e, and the outcome assignment p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub c: usize,
    pub e: usize,
    pub p: BTreeMap<String, Target>,
}

impl Environment {
    pub fn new(c: usize, e: usize, p: BTreeMap<String, Target>) -> Result<Environment> {
        if c > e {
            return Err(domain(format!("environment has c = {c} > e = {e}")));
        }
        for (o, t) in &p {
            if let Target::K(i) = t {
                if *i > e {
                    return Err(domain(format!("outcome {o:?} targets k{i}, beyond e = {e}")));
                }
            }
        }
        Ok(Environment { c, e, p })
    }

    pub fn target(&self, outcome: &str) -> Result<&Target> {
        self.p
            .get(outcome)
            .ok_or_else(|| domain(format!("environment does not place outcome {outcome:?}")))
    }

    /// Size w.r.t. Player A: Even(e) - c.
    pub fn size_a(&self) -> usize {
        even_ceil_val(self.e) - self.c
    }

    /// Size w.r.t. Player B: Odd(e) - c.
    pub fn size_b(&self) -> usize {
        odd_ceil_val(self.e) - self.c
    }

    pub fn size(&self) -> usize {
        self.e - self.c
    }

    /// Relevant environments: c in {0,1}, no qinit target, nothing mapped to
    /// k_{c-1}, and every index in [c, e] actually used.
    pub fn is_relevant(&self) -> bool {
        if self.c > 1 {
            return false;
        }
        let mut used = vec![false; self.e + 1];
        for t in self.p.values() {
            match t {
                Target::QInit => return false,
                Target::K(i) => {
                    if self.c > 0 && *i == self.c - 1 {
                        return false;
                    }
                    used[*i] = true;
                }
                Target::Value(_) => {}
            }
        }
        (self.c..=self.e).all(|i| used[i])
    }
}
