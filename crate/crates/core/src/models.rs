//! Transition systems, featured transition systems and their may/must
//! (modal) abstraction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::featexpr::{Config, ConfigSpace, FeatExpr};

pub type StateId = usize;
pub type ActionId = usize;
pub type PropId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: StateId,
    pub action: ActionId,
    pub target: StateId,
}

/// A plain transition system. States, actions and propositions are interned
/// to dense ids; `labels[s]` is the sorted set of propositions true in `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ts {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub props: Vec<String>,
    pub initial: Vec<StateId>,
    pub labels: Vec<Vec<PropId>>,
    pub transitions: Vec<Transition>,
}

impl Ts {
    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if self.initial.is_empty() {
            return Err(Error::Validation("no initial state".into()));
        }
        if let Some(&s) = self.initial.iter().find(|&&s| s >= n) {
            return Err(Error::Validation(format!("initial state #{s} out of range")));
        }
        if self.labels.len() != n {
            return Err(Error::Validation(format!(
                "{} label sets for {n} states",
                self.labels.len()
            )));
        }
        for (s, props) in self.labels.iter().enumerate() {
            if let Some(p) = props.iter().find(|&&p| p >= self.props.len()) {
                return Err(Error::Validation(format!(
                    "state `{}` carries undeclared proposition #{p}",
                    self.states[s]
                )));
            }
        }
        for t in &self.transitions {
            if t.source >= n || t.target >= n || t.action >= self.actions.len() {
                return Err(Error::Validation(format!("transition {t:?} out of range")));
            }
        }
        Ok(())
    }

    pub fn has_label(&self, state: StateId, prop: PropId) -> bool {
        self.labels[state].binary_search(&prop).is_ok()
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.props.iter().position(|p| p == name)
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    /// States with no outgoing transition.
    pub fn deadlocks(&self) -> Vec<StateId> {
        let mut has_out = vec![false; self.states.len()];
        for t in &self.transitions {
            has_out[t.source] = true;
        }
        (0..self.states.len()).filter(|&s| !has_out[s]).collect()
    }

    pub fn is_total(&self) -> bool {
        self.deadlocks().is_empty()
    }

    /// Successor lists indexed by state, in transition order.
    pub fn successors(&self) -> Vec<Vec<StateId>> {
        let mut succ = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            succ[t.source].push(t.target);
        }
        succ
    }
}

/// A featured transition system: `ts.transitions[i]` is guarded by
/// `guards[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fts {
    pub ts: Ts,
    pub space: ConfigSpace,
    pub guards: Vec<FeatExpr>,
}

impl Fts {
    /// Builds an FTS, merging duplicate `(source, action, target)` triples by
    /// disjoining their guards.
    pub fn new(mut ts: Ts, space: ConfigSpace, guards: Vec<FeatExpr>) -> Result<Self> {
        if guards.len() != ts.transitions.len() {
            return Err(Error::Validation(format!(
                "{} guards for {} transitions",
                guards.len(),
                ts.transitions.len()
            )));
        }
        ts.validate()?;
        for g in &guards {
            g.check_features(space.features().len())?;
        }
        let mut merged: Vec<(Transition, FeatExpr)> = Vec::with_capacity(guards.len());
        let mut index: HashMap<Transition, usize> = HashMap::new();
        for (t, g) in ts.transitions.drain(..).zip(guards) {
            match index.get(&t) {
                Some(&i) => {
                    let prev = std::mem::replace(&mut merged[i].1, FeatExpr::False);
                    merged[i].1 = prev.or(g);
                }
                None => {
                    index.insert(t, merged.len());
                    merged.push((t, g));
                }
            }
        }
        let (transitions, guards) = merged.into_iter().unzip();
        ts.transitions = transitions;
        Ok(Fts { ts, space, guards })
    }

    /// Checks that every valid variant's projection is total.
    pub fn check_totality(&self) -> Result<()> {
        for k in self.space.iter() {
            let proj = self.project_unchecked(k);
            if let Some(&s) = proj.deadlocks().first() {
                return Err(Error::Validation(format!(
                    "state `{}` has no enabled outgoing transition in variant {}",
                    self.ts.states[s],
                    k.render(self.space.features())
                )));
            }
        }
        Ok(())
    }

    fn project_unchecked(&self, k: Config) -> Ts {
        let transitions = self
            .ts
            .transitions
            .iter()
            .zip(&self.guards)
            .filter(|(_, g)| g.eval(k))
            .map(|(t, _)| *t)
            .collect();
        Ts {
            transitions,
            ..self.ts.clone()
        }
    }

    /// The single-variant projection `π_k`.
    pub fn project_to_config(&self, k: Config) -> Result<Ts> {
        if !self.space.contains(k) {
            return Err(Error::InvalidArgument(format!(
                "configuration {} is not in the configuration space",
                k.render(self.space.features())
            )));
        }
        Ok(self.project_unchecked(k))
    }

    /// The subspace projection `π_K'`: keeps transitions admitted by at least
    /// one configuration of `sub`.
    pub fn project_to_subspace(&self, sub: &ConfigSpace) -> Result<Fts> {
        if !sub.is_subset_of(&self.space) {
            return Err(Error::InvalidArgument(
                "subspace is not contained in the configuration space".into(),
            ));
        }
        let (transitions, guards): (Vec<Transition>, Vec<FeatExpr>) = self
            .ts
            .transitions
            .iter()
            .zip(&self.guards)
            .filter(|(_, g)| sub.alpha_join(g))
            .map(|(t, g)| (*t, g.clone()))
            .unzip();
        Ok(Fts {
            ts: Ts {
                transitions,
                ..self.ts.clone()
            },
            space: sub.clone(),
            guards,
        })
    }

    /// The join abstraction: may = guards satisfied by some valid config,
    /// must = guards satisfied by every valid config.
    pub fn abstract_join(&self) -> Mts {
        let mut ts = Ts {
            transitions: Vec::new(),
            ..self.ts.clone()
        };
        let mut must = Vec::new();
        let mut origin = Vec::new();
        for (i, (t, g)) in self.ts.transitions.iter().zip(&self.guards).enumerate() {
            if self.space.alpha_join(g) {
                ts.transitions.push(*t);
                must.push(self.space.alpha_join_dual(g));
                origin.push(i);
            }
        }
        Mts { ts, must, origin }
    }
}

/// A modal transition system. `ts.transitions` is the may relation;
/// `must[i]` marks the may transitions that are also must transitions, so
/// must ⊆ may holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mts {
    pub ts: Ts,
    pub must: Vec<bool>,
    /// Index of the FTS transition each may transition was derived from.
    pub origin: Vec<usize>,
}

impl Mts {
    pub fn may_transitions(&self) -> &[Transition] {
        &self.ts.transitions
    }

    pub fn must_transitions(&self) -> Vec<Transition> {
        self.ts
            .transitions
            .iter()
            .zip(&self.must)
            .filter(|(_, &m)| m)
            .map(|(t, _)| *t)
            .collect()
    }

    pub fn is_must(&self, index: usize) -> bool {
        self.must[index]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::gen_vending_machine;

    fn names(fts: &Fts, ts: &[Transition]) -> Vec<String> {
        let mut v: Vec<String> = ts
            .iter()
            .map(|t| fts.ts.actions[t.action].clone())
            .collect();
        v.sort();
        v
    }

    fn cfg(fts: &Fts, names: &[&str]) -> Config {
        Config::from_features(names.iter().map(|n| fts.space.feature_id(n).unwrap()))
    }

    #[test]
    fn project_basic_variant() {
        let vm = gen_vending_machine();
        let ts = vm.project_to_config(cfg(&vm, &[])).unwrap();
        assert_eq!(names(&vm, &ts.transitions), ["drink", "pay", "take"]);
        assert!(ts.is_total());
    }

    #[test]
    fn project_full_variant() {
        let vm = gen_vending_machine();
        let ts = vm.project_to_config(cfg(&vm, &["c", "f"])).unwrap();
        assert_eq!(names(&vm, &ts.transitions), ["cancel", "drink", "free", "take"]);
    }

    #[test]
    fn project_rejects_foreign_config() {
        let vm = gen_vending_machine();
        let sub = vm.space.models(&FeatExpr::var(0));
        let narrowed = vm.project_to_subspace(&sub).unwrap();
        assert!(narrowed.project_to_config(Config(0)).is_err());
    }

    #[test]
    fn subspace_projections() {
        let vm = gen_vending_machine();
        let c = vm.space.feature_id("c").unwrap();
        let f = vm.space.feature_id("f").unwrap();
        let no_c = vm.project_to_subspace(&vm.space.models(&FeatExpr::var(c).not())).unwrap();
        assert_eq!(names(&vm, &no_c.ts.transitions), ["drink", "free", "pay", "take"]);

        let c_nf = FeatExpr::var(c).and(FeatExpr::var(f).not());
        let p = vm.project_to_subspace(&vm.space.models(&c_nf)).unwrap();
        assert_eq!(names(&vm, &p.ts.transitions), ["cancel", "drink", "pay", "take"]);

        assert_eq!(vm.project_to_subspace(&vm.space).unwrap(), vm);
    }

    #[test]
    fn join_abstraction_matches_vending_figures() {
        let vm = gen_vending_machine();
        let mts = vm.abstract_join();
        assert_eq!(names(&vm, &mts.must_transitions()), ["drink", "take"]);
        assert_eq!(
            names(&vm, mts.may_transitions()),
            ["cancel", "drink", "free", "pay", "take"]
        );

        let c = vm.space.feature_id("c").unwrap();
        let with_c = vm.project_to_subspace(&vm.space.models(&FeatExpr::var(c))).unwrap();
        let mts = with_c.abstract_join();
        assert_eq!(names(&vm, &mts.must_transitions()), ["cancel", "drink", "take"]);
        assert_eq!(
            names(&vm, mts.may_transitions()),
            ["cancel", "drink", "free", "pay", "take"]
        );
    }

    #[test]
    fn singleton_abstraction_is_exact() {
        let vm = gen_vending_machine();
        for k in vm.space.iter() {
            let single = ConfigSpace::new(vm.space.features().to_vec(), [k]).unwrap();
            let mts = vm.project_to_subspace(&single).unwrap().abstract_join();
            assert!(mts.must.iter().all(|&m| m));
            assert_eq!(mts.ts.transitions, vm.project_to_config(k).unwrap().transitions);
        }
    }

    #[test]
    fn duplicate_triples_merge_guards() {
        let vm = gen_vending_machine();
        let mut ts = vm.ts.clone();
        let mut guards = vm.guards.clone();
        ts.transitions.push(ts.transitions[0]);
        guards.push(FeatExpr::var(0));
        let merged = Fts::new(ts, vm.space.clone(), guards).unwrap();
        assert_eq!(merged.ts.transitions.len(), vm.ts.transitions.len());
        assert_eq!(merged.guards[0], vm.guards[0].clone().or(FeatExpr::var(0)));
    }

    #[test]
    fn validation_errors() {
        let vm = gen_vending_machine();
        let mut ts = vm.ts.clone();
        ts.initial.clear();
        assert!(Fts::new(ts, vm.space.clone(), vm.guards.clone()).is_err());

        let mut guards = vm.guards.clone();
        guards[0] = FeatExpr::var(7);
        assert!(Fts::new(vm.ts.clone(), vm.space.clone(), guards).is_err());

        let mut guards = vm.guards.clone();
        let take = vm
            .ts
            .transitions
            .iter()
            .position(|t| vm.ts.actions[t.action] == "take")
            .unwrap();
        guards[take] = FeatExpr::var(0);
        let partial = Fts::new(vm.ts.clone(), vm.space.clone(), guards).unwrap();
        assert!(partial.check_totality().is_err());
        assert!(vm.check_totality().is_ok());
    }
}
