//! Abstraction refinement over the configuration space.
//!
//! Each engine call checks the join abstraction of the FTS projected to the
//! current subspace. Definite answers settle the whole subspace; an
//! indefinite answer is traced to a failure edge whose concrete guard splits
//! the subspace in two, and both halves are checked recursively.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use crate::ctl::{Closure, Ctl};
use crate::error::{Error, Result};
use crate::featexpr::{Config, ConfigSpace, FeatExpr};
use crate::game::{self, find_failure, Color, ReuseStore, SolvedGame, ThreeValued};
use crate::models::Fts;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Prune game-graphs at nodes colored definitely by an ancestor call.
    pub reuse: bool,
    /// Re-solve every pruned game from scratch and compare the colors of the
    /// reused nodes. Slow; meant for tests.
    pub audit_reuse: bool,
    /// Write one colored DOT graph per engine call into this directory.
    pub dot_dir: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            reuse: true,
            audit_reuse: false,
            dot_dir: None,
        }
    }
}

impl VerifyOptions {
    pub fn without_reuse() -> Self {
        VerifyOptions {
            reuse: false,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub configs: ConfigSpace,
    pub holds: bool,
}

/// One engine call.
#[derive(Debug, Clone)]
pub struct Iteration {
    pub depth: usize,
    pub configs: ConfigSpace,
    pub result: ThreeValued,
    pub nodes_built: usize,
    pub nodes_reused: usize,
    /// Guard the subspace was split on, when the result was indefinite.
    pub split_guard: Option<FeatExpr>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Stats {
    pub calls: usize,
    pub nodes_built: usize,
    pub nodes_reused: usize,
    pub max_depth: usize,
    pub elapsed_ms: f64,
    /// Engine calls in pre-order of the recursion tree.
    pub iterations: Vec<Iteration>,
}

impl Stats {
    fn add(&mut self, other: Stats) {
        self.calls += other.calls;
        self.nodes_built += other.nodes_built;
        self.nodes_reused += other.nodes_reused;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.elapsed_ms += other.elapsed_ms;
        self.iterations.extend(other.iterations);
    }

    pub fn splits(&self) -> usize {
        self.iterations.iter().filter(|i| i.split_guard.is_some()).count()
    }

    /// Number of recursion levels that ran at least one engine call.
    pub fn levels(&self) -> usize {
        self.iterations.iter().map(|i| i.depth + 1).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// The configuration space that was verified.
    pub space: ConfigSpace,
    pub verdicts: Vec<Verdict>,
    pub stats: Stats,
}

impl VerifyReport {
    pub fn per_config(&self) -> BTreeMap<Config, bool> {
        self.verdicts
            .iter()
            .flat_map(|v| v.configs.iter().map(move |k| (k, v.holds)))
            .collect()
    }

    pub fn satisfying(&self) -> Vec<Config> {
        self.collect(true)
    }

    pub fn violating(&self) -> Vec<Config> {
        self.collect(false)
    }

    fn collect(&self, holds: bool) -> Vec<Config> {
        let mut out: Vec<Config> = self
            .verdicts
            .iter()
            .filter(|v| v.holds == holds)
            .flat_map(|v| v.configs.iter())
            .collect();
        out.sort();
        out
    }

    pub fn all_satisfied(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

/// Concatenates reports over disjoint subspaces, summing their statistics
/// and merging neighbouring verdicts that agree.
pub fn combine_reports(parts: Vec<VerifyReport>) -> Result<VerifyReport> {
    let mut iter = parts.into_iter();
    let Some(first) = iter.next() else {
        return Err(Error::InvalidArgument("no reports to combine".into()));
    };
    let mut space = first.space;
    let mut verdicts = first.verdicts;
    let mut stats = first.stats;
    for part in iter {
        if !part.space.same_features(&space) {
            return Err(Error::InvalidArgument(
                "reports range over different feature sets".into(),
            ));
        }
        if !part.space.is_disjoint(&space) {
            return Err(Error::InvalidArgument(
                "reports cover overlapping configuration subsets".into(),
            ));
        }
        space = space.union(&part.space);
        verdicts.extend(part.verdicts);
        stats.add(part.stats);
    }
    let mut merged: Vec<Verdict> = Vec::with_capacity(verdicts.len());
    for v in verdicts {
        match merged.last_mut() {
            Some(last) if last.holds == v.holds => last.configs = last.configs.union(&v.configs),
            _ => merged.push(v),
        }
    }
    Ok(VerifyReport {
        space,
        verdicts: merged,
        stats,
    })
}

/// Checks `phi` on every variant of `space`, refining on indefinite answers.
pub fn verify(fts: &Fts, space: &ConfigSpace, phi: &Ctl, options: &VerifyOptions) -> Result<VerifyReport> {
    if space.is_empty() {
        return Err(Error::InvalidArgument("configuration space is empty".into()));
    }
    let root = fts.project_to_subspace(space)?;
    if let Some(dir) = &options.dot_dir {
        std::fs::create_dir_all(dir)?;
    }
    let mut run = Run {
        closure: Closure::new(phi),
        options,
        depth_limit: space.len(),
        calls: 0,
    };
    run.refine(&root, &ReuseStore::new(), 0)
}

/// The result of one abstract check, without refinement.
pub fn check_abstract(fts: &Fts, phi: &Ctl) -> Result<ThreeValued> {
    let closure = Closure::new(phi);
    Ok(game::solve(&fts.abstract_join(), &closure, &ReuseStore::new())?.result)
}

struct Run<'a> {
    closure: Closure,
    options: &'a VerifyOptions,
    depth_limit: usize,
    calls: usize,
}

impl Run<'_> {
    fn refine(&mut self, fts: &Fts, reuse: &ReuseStore, depth: usize) -> Result<VerifyReport> {
        if depth > self.depth_limit {
            return Err(Error::Invariant(format!(
                "refinement depth {depth} exceeds the number of configurations"
            )));
        }
        let started = Instant::now();
        let mts = fts.abstract_join();
        let solved = game::solve(&mts, &self.closure, reuse)?;
        if self.options.audit_reuse && !reuse.is_empty() {
            self.audit(fts, &solved)?;
        }
        let call = self.calls;
        self.calls += 1;
        if let Some(dir) = &self.options.dot_dir {
            let dot = game::to_dot(&solved.graph, &solved.coloring, &self.closure, &mts.ts);
            std::fs::write(dir.join(format!("iter_{call:03}.dot")), dot)?;
        }

        let mut iteration = Iteration {
            depth,
            configs: fts.space.clone(),
            result: solved.result,
            nodes_built: solved.graph.node_count(),
            nodes_reused: solved.graph.reused_count(),
            split_guard: None,
            elapsed_ms: 0.0,
        };

        let holds = match solved.result {
            ThreeValued::True => Some(true),
            ThreeValued::False => Some(false),
            ThreeValued::Indefinite => None,
        };
        if let Some(holds) = holds {
            iteration.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            return Ok(VerifyReport {
                space: fts.space.clone(),
                verdicts: vec![Verdict {
                    configs: fts.space.clone(),
                    holds,
                }],
                stats: single_call_stats(iteration, depth),
            });
        }

        let failure = find_failure(&solved.graph, &solved.coloring)?;
        let guard = fts.guards[mts.origin[failure.transition(&solved.graph)]].clone();
        let (pos, neg) = fts.space.split(&guard);
        if pos.is_empty() || neg.is_empty() {
            return Err(Error::Invariant(format!(
                "failure guard `{}` does not split the configuration space",
                guard.render(fts.space.features())
            )));
        }
        let mut child_reuse = reuse.clone();
        if self.options.reuse {
            child_reuse.absorb(&solved.graph, &solved.coloring);
        } else {
            child_reuse = ReuseStore::new();
        }
        iteration.split_guard = Some(guard);
        iteration.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        let mut stats = single_call_stats(iteration, depth);

        let left = self.refine(&fts.project_to_subspace(&pos)?, &child_reuse, depth + 1)?;
        let right = self.refine(&fts.project_to_subspace(&neg)?, &child_reuse, depth + 1)?;
        let mut combined = combine_reports(vec![left, right])?;
        stats.add(std::mem::take(&mut combined.stats));
        combined.stats = stats;
        Ok(combined)
    }

    /// Recolors without pruning and checks every reused node kept its color.
    fn audit(&self, fts: &Fts, pruned: &SolvedGame) -> Result<()> {
        let fresh = game::solve(&fts.abstract_join(), &self.closure, &ReuseStore::new())?;
        if fresh.result != pruned.result {
            return Err(Error::Invariant(format!(
                "reuse changed the result: {:?} with pruning, {:?} without",
                pruned.result, fresh.result
            )));
        }
        for (id, node) in pruned.graph.nodes.iter().enumerate() {
            if !node.reused {
                continue;
            }
            if let Some(other) = fresh.graph.lookup(node.state, node.formula) {
                let (a, b) = (pruned.coloring.color(id), fresh.coloring.color(other));
                if a != b || a == Color::Unknown {
                    return Err(Error::Invariant(format!(
                        "reused node (state {}, formula {}) is {a:?} but recomputes to {b:?}",
                        node.state,
                        self.closure.render(node.formula)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn single_call_stats(iteration: Iteration, depth: usize) -> Stats {
    Stats {
        calls: 1,
        nodes_built: iteration.nodes_built,
        nodes_reused: iteration.nodes_reused,
        max_depth: depth,
        elapsed_ms: iteration.elapsed_ms,
        iterations: vec![iteration],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::gen_vending_machine;

    fn phi(text: &str) -> Ctl {
        Ctl::parse(text).unwrap()
    }

    #[test]
    fn vending_until_refines_twice() {
        let vm = gen_vending_machine();
        let report = verify(&vm, &vm.space, &phi("A[!r U r]"), &VerifyOptions::default()).unwrap();
        assert_eq!(report.violating(), vec![Config(0b01)]);
        assert_eq!(report.satisfying(), vec![Config(0b00), Config(0b10), Config(0b11)]);
        let order: Vec<String> = report.stats.iterations.iter().map(|i| i.configs.render()).collect();
        assert_eq!(order, ["{}, {c}, {f}, {c,f}", "{c}, {c,f}", "{c}", "{c,f}", "{}, {f}"]);
        assert_eq!(report.stats.splits(), 2);
        assert_eq!(report.stats.levels(), 3);
    }

    #[test]
    fn vending_exists_until_splits_on_f() {
        let vm = gen_vending_machine();
        let report = verify(&vm, &vm.space, &phi("E[!r U r]"), &VerifyOptions::default()).unwrap();
        assert!(report.all_satisfied());
        assert_eq!(report.verdicts.len(), 1);
        assert_eq!(report.stats.calls, 3);
        let guard = report.stats.iterations[0].split_guard.as_ref().unwrap();
        assert_eq!(guard.render(vm.space.features()), "f");
    }

    #[test]
    fn trivial_formula_one_call() {
        let vm = gen_vending_machine();
        let report = verify(&vm, &vm.space, &Ctl::True, &VerifyOptions::default()).unwrap();
        assert_eq!(report.stats.calls, 1);
        assert!(report.all_satisfied());
    }

    #[test]
    fn subspace_and_empty_space() {
        let vm = gen_vending_machine();
        let (c, not_c) = vm.space.split(&FeatExpr::var(0));
        let report = verify(&vm, &not_c, &phi("A[!r U r]"), &VerifyOptions::default()).unwrap();
        assert_eq!(report.stats.calls, 1);
        assert!(report.all_satisfied());
        let empty = c.split(&FeatExpr::False).0;
        assert!(matches!(
            verify(&vm, &empty, &Ctl::True, &VerifyOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn audit_accepts_reuse() {
        let vm = gen_vending_machine();
        let options = VerifyOptions {
            audit_reuse: true,
            ..Default::default()
        };
        for text in ["A[!r U r]", "E[!r U r]", "AG EF r", "EG !r"] {
            verify(&vm, &vm.space, &phi(text), &options).unwrap();
        }
    }

    #[test]
    fn dot_files_per_call() {
        let vm = gen_vending_machine();
        let dir = tempfile::tempdir().unwrap();
        let options = VerifyOptions {
            dot_dir: Some(dir.path().join("dots")),
            ..Default::default()
        };
        verify(&vm, &vm.space, &phi("A[!r U r]"), &options).unwrap();
        let mut names: Vec<String> = std::fs::read_dir(dir.path().join("dots"))
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert_eq!(names, ["iter_000.dot", "iter_001.dot", "iter_002.dot", "iter_003.dot", "iter_004.dot"]);
    }

    #[test]
    fn combine_rejects_overlap_and_merges() {
        let vm = gen_vending_machine();
        let (c, not_c) = vm.space.split(&FeatExpr::var(0));
        let part = |space: &ConfigSpace| verify(&vm, space, &Ctl::True, &VerifyOptions::default()).unwrap();
        let both = combine_reports(vec![part(&c), part(&not_c)]).unwrap();
        assert_eq!(both.verdicts.len(), 1);
        assert_eq!(both.space, vm.space);
        assert_eq!(both.stats.calls, 2);
        assert!(combine_reports(vec![part(&c), part(&vm.space)]).is_err());
        assert!(combine_reports(Vec::new()).is_err());
    }
}
