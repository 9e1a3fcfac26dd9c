//! Reference checker: standard CTL labeling on a single transition system,
//! and lifted checking by enumerating every configuration.
//!
//! Only used to cross-check the game-based pipeline.

use std::collections::BTreeMap;

use crate::ctl::{Ctl, Path, Quant};
use crate::error::{Error, Result};
use crate::featexpr::Config;
use crate::models::{Fts, Ts};

/// Satisfaction set of `phi`, indexed by state. The TS must be total.
pub fn sat_states(ts: &Ts, phi: &Ctl) -> Result<Vec<bool>> {
    if let Some(&s) = ts.deadlocks().first() {
        return Err(Error::InvalidArgument(format!(
            "transition system is not total: state `{}` has no successor",
            ts.states[s]
        )));
    }
    Ok(Labeler::new(ts).sat(phi))
}

/// True iff every initial state satisfies `phi`.
pub fn check_ts(ts: &Ts, phi: &Ctl) -> Result<bool> {
    let sat = sat_states(ts, phi)?;
    Ok(ts.initial.iter().all(|&s| sat[s]))
}

/// Per-configuration verdicts by projecting and checking each variant.
pub fn lifted_check_brute(fts: &Fts, phi: &Ctl) -> Result<BTreeMap<Config, bool>> {
    fts.space
        .iter()
        .map(|k| {
            let ts = fts.project_to_config(k)?;
            let verdict = check_ts(&ts, phi).map_err(|e| {
                Error::InvalidArgument(format!(
                    "variant {}: {e}",
                    k.render(fts.space.features())
                ))
            })?;
            Ok((k, verdict))
        })
        .collect()
}

struct Labeler<'a> {
    ts: &'a Ts,
    succ: Vec<Vec<usize>>,
}

impl<'a> Labeler<'a> {
    fn new(ts: &'a Ts) -> Self {
        Labeler {
            ts,
            succ: ts.successors(),
        }
    }

    fn n(&self) -> usize {
        self.ts.states.len()
    }

    fn sat(&self, phi: &Ctl) -> Vec<bool> {
        match phi {
            Ctl::True => vec![true; self.n()],
            Ctl::False => vec![false; self.n()],
            Ctl::Lit { prop, positive } => {
                let id = self.ts.prop_id(prop);
                (0..self.n())
                    .map(|s| id.is_some_and(|p| self.ts.has_label(s, p)) == *positive)
                    .collect()
            }
            Ctl::And(a, b) => zip_with(&self.sat(a), &self.sat(b), |x, y| x && y),
            Ctl::Or(a, b) => zip_with(&self.sat(a), &self.sat(b), |x, y| x || y),
            Ctl::Quantified(q, path) => match path.as_ref() {
                Path::Next(inner) => self.pre(*q, &self.sat(inner)),
                Path::Until(a, b) => self.until(*q, &self.sat(a), &self.sat(b)),
                Path::Release(a, b) => self.release(*q, &self.sat(a), &self.sat(b)),
            },
        }
    }

    /// `AX`/`EX` image: all / some successors in `set`.
    fn pre(&self, q: Quant, set: &[bool]) -> Vec<bool> {
        self.succ
            .iter()
            .map(|succ| match q {
                Quant::A => succ.iter().all(|&t| set[t]),
                Quant::E => succ.iter().any(|&t| set[t]),
            })
            .collect()
    }

    /// Least fixpoint of `Z = b ∨ (a ∧ QX Z)`.
    fn until(&self, q: Quant, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut z = b.to_vec();
        loop {
            let step = self.pre(q, &z);
            let next: Vec<bool> = (0..self.n()).map(|s| b[s] || (a[s] && step[s])).collect();
            if next == z {
                return z;
            }
            z = next;
        }
    }

    /// Greatest fixpoint of `Z = b ∧ (a ∨ QX Z)`.
    fn release(&self, q: Quant, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut z = b.to_vec();
        loop {
            let step = self.pre(q, &z);
            let next: Vec<bool> = (0..self.n()).map(|s| b[s] && (a[s] || step[s])).collect();
            if next == z {
                return z;
            }
            z = next;
        }
    }
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}
