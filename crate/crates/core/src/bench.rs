//! Built-in models and generators: the vending machine, the `M_n` family,
//! seeded random FTSs and formulas, and a small Call/Time benchmark runner.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ctl::{Ctl, Quant};
use crate::error::{Error, Result};
use crate::featexpr::{Config, ConfigSpace, FeatExpr};
use crate::models::{Fts, Transition, Ts};
use crate::verify::{verify, VerifyOptions};

pub const MAX_RANDOM_STATES: usize = 8;
pub const MAX_RANDOM_FEATURES: usize = 5;

/// The coffee/soda vending machine family with features `c` (cancel) and
/// `f` (free drinks).
pub fn gen_vending_machine() -> Fts {
    let features = ConfigSpace::features_from_names(&["c", "f"]);
    let space = ConfigSpace::full(features).expect("two features");
    let (c, f) = (FeatExpr::var(0), FeatExpr::var(1));
    let actions = ["pay", "free", "drink", "cancel", "take"];
    let t = |source, action, target| Transition {
        source,
        action,
        target,
    };
    let ts = Ts {
        states: vec!["s0".into(), "s1".into(), "s2".into()],
        actions: actions.iter().map(|a| a.to_string()).collect(),
        props: vec!["r".into()],
        initial: vec![0],
        labels: vec![vec![], vec![], vec![0]],
        transitions: vec![t(0, 0, 1), t(0, 1, 2), t(1, 2, 2), t(1, 3, 0), t(2, 4, 0)],
    };
    let guards = vec![f.clone().not(), f, FeatExpr::True, c, FeatExpr::True];
    Fts::new(ts, space, guards).expect("vending machine is well-formed")
}

/// The tree-shaped family `M_n`: level `k` branches on feature `A_k`, the
/// enabled branch adding `2^(k-1)` to `x`. Leaves loop forever. States are
/// labeled `x_ge_0` always and `x_ge_1` when `x >= 1`.
pub fn gen_mn(n: usize) -> Result<Fts> {
    if n == 0 {
        return Err(Error::InvalidArgument("M_n needs n >= 1".into()));
    }
    if n > 20 {
        return Err(Error::InvalidArgument(format!("M_{n} is too large")));
    }
    let names: Vec<String> = (1..=n).map(|k| format!("A{k}")).collect();
    let space = ConfigSpace::full(ConfigSpace::features_from_names(&names))?;

    let mut values = vec![0u64];
    let mut transitions = Vec::new();
    let mut guards = Vec::new();
    let mut frontier = vec![0usize];
    for level in 0..n {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for &parent in &frontier {
            for enabled in [true, false] {
                let child = values.len();
                let bump = if enabled { 1u64 << level } else { 0 };
                values.push(values[parent] + bump);
                transitions.push(Transition {
                    source: parent,
                    action: 0,
                    target: child,
                });
                let var = FeatExpr::var(level);
                guards.push(if enabled { var } else { var.not() });
                next.push(child);
            }
        }
        frontier = next;
    }
    for &leaf in &frontier {
        transitions.push(Transition {
            source: leaf,
            action: 0,
            target: leaf,
        });
        guards.push(FeatExpr::True);
    }
    let labels = values
        .iter()
        .map(|&x| if x >= 1 { vec![0, 1] } else { vec![0] })
        .collect();
    let ts = Ts {
        states: (0..values.len()).map(|i| format!("s{i}")).collect(),
        actions: vec!["tau".into()],
        props: vec!["x_ge_0".into(), "x_ge_1".into()],
        initial: vec![0],
        labels,
        transitions,
    };
    Fts::new(ts, space, guards)
}

/// Accumulated `x` value of every state of `gen_mn(n)`, in state order.
pub fn mn_values(n: usize) -> Vec<u64> {
    let mut values = vec![0u64];
    let mut frontier = vec![0usize];
    for level in 0..n {
        let mut next = Vec::new();
        for &parent in &frontier {
            for bump in [1u64 << level, 0] {
                next.push(values.len());
                values.push(values[parent] + bump);
            }
        }
        frontier = next;
    }
    values
}

/// A seeded random FTS over propositions `p` and `q`. Guards are random
/// cubes; a `true`-guarded self-loop is added wherever some valid variant
/// would otherwise deadlock, so every projection is total.
pub fn gen_random_fts(seed: u64, state_count: usize, feature_count: usize) -> Result<Fts> {
    if state_count == 0 || state_count > MAX_RANDOM_STATES {
        return Err(Error::InvalidArgument(format!(
            "state count must be in 1..={MAX_RANDOM_STATES}"
        )));
    }
    if feature_count > MAX_RANDOM_FEATURES {
        return Err(Error::InvalidArgument(format!(
            "feature count must be at most {MAX_RANDOM_FEATURES}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..feature_count).map(|i| format!("f{i}")).collect();
    let features = ConfigSpace::features_from_names(&names);
    let all: Vec<Config> = (0..1u64 << feature_count).map(Config).collect();
    let mut configs: Vec<Config> = all.iter().copied().filter(|_| rng.gen_bool(0.75)).collect();
    if configs.is_empty() {
        configs.push(*all.choose(&mut rng).expect("at least one configuration"));
    }
    let space = ConfigSpace::new(features, configs)?;

    let labels = (0..state_count)
        .map(|_| (0..2).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let mut initial = vec![0];
    if state_count > 1 && rng.gen_bool(0.25) {
        initial.push(rng.gen_range(1..state_count));
    }

    let mut transitions = Vec::new();
    let mut guards = Vec::new();
    for source in 0..state_count {
        for _ in 0..rng.gen_range(1..=3) {
            transitions.push(Transition {
                source,
                action: rng.gen_range(0..3),
                target: rng.gen_range(0..state_count),
            });
            guards.push(random_cube(&mut rng, feature_count));
        }
    }
    let mut ts = Ts {
        states: (0..state_count).map(|i| format!("s{i}")).collect(),
        actions: vec!["a".into(), "b".into(), "c".into(), "loop".into()],
        props: vec!["p".into(), "q".into()],
        initial,
        labels,
        transitions,
    };
    for s in 0..state_count {
        let deadlocks = space.iter().any(|k| {
            !ts.transitions
                .iter()
                .zip(&guards)
                .any(|(t, g)| t.source == s && g.eval(k))
        });
        if deadlocks {
            ts.transitions.push(Transition {
                source: s,
                action: 3,
                target: s,
            });
            guards.push(FeatExpr::True);
        }
    }
    Fts::new(ts, space, guards)
}

fn random_cube(rng: &mut impl Rng, feature_count: usize) -> FeatExpr {
    if feature_count == 0 || rng.gen_bool(0.3) {
        return FeatExpr::True;
    }
    let mut ids: Vec<usize> = (0..feature_count).collect();
    ids.shuffle(rng);
    let width = rng.gen_range(1..=2.min(feature_count));
    FeatExpr::conjunction(ids[..width].iter().map(|&id| {
        let var = FeatExpr::var(id);
        if rng.gen_bool(0.5) {
            var
        } else {
            var.not()
        }
    }))
}

/// A random NNF formula of depth at most `max_depth` over `props`.
pub fn random_formula(rng: &mut impl Rng, props: &[&str], max_depth: usize) -> Ctl {
    if max_depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Ctl::True,
            1 => Ctl::False,
            _ => {
                let p = props.choose(rng).copied().unwrap_or("p");
                if rng.gen_bool(0.5) {
                    Ctl::prop(p)
                } else {
                    Ctl::neg_prop(p)
                }
            }
        };
    }
    let d = max_depth - 1;
    let q = if rng.gen_bool(0.5) { Quant::A } else { Quant::E };
    match rng.gen_range(0..5) {
        0 => random_formula(rng, props, d).and(random_formula(rng, props, d)),
        1 => random_formula(rng, props, d).or(random_formula(rng, props, d)),
        2 => Ctl::next(q, random_formula(rng, props, d)),
        3 => Ctl::until(q, random_formula(rng, props, d), random_formula(rng, props, d)),
        _ => Ctl::release(q, random_formula(rng, props, d), random_formula(rng, props, d)),
    }
}

/// One model/formula pair of a benchmark matrix.
#[derive(Debug, Clone)]
pub struct BenchCase {
    pub model_name: String,
    pub model: Fts,
    pub formula: Ctl,
}

#[derive(Debug, Clone, Default)]
pub struct BenchSpec {
    pub cases: Vec<BenchCase>,
    /// Also run every case without reuse.
    pub compare_reuse: bool,
    /// Timing repetitions; the median is reported. 0 is treated as 1.
    pub repeat: usize,
}

impl BenchSpec {
    /// `M_n × {A(true U x_ge_0), A(true U x_ge_1)}` for every `n`.
    pub fn mn_matrix(ns: &[usize]) -> Result<BenchSpec> {
        let mut cases = Vec::new();
        for &n in ns {
            let model = gen_mn(n)?;
            for text in ["A[true U x_ge_0]", "A[true U x_ge_1]"] {
                cases.push(BenchCase {
                    model_name: format!("M_{n}"),
                    model: model.clone(),
                    formula: Ctl::parse(text)?,
                });
            }
        }
        Ok(BenchSpec {
            cases,
            compare_reuse: false,
            repeat: 1,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub model: String,
    pub formula: String,
    pub calls: usize,
    pub satisfied: usize,
    pub violated: usize,
    pub nodes_built: usize,
    pub nodes_reused: usize,
    pub time_ms: f64,
    /// `(nodes_built, time_ms)` with reuse disabled.
    pub no_reuse: Option<(usize, f64)>,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

/// Runs every case sequentially and records engine calls and wall time.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    let repeat = spec.repeat.max(1);
    let timed = |case: &BenchCase, options: &VerifyOptions| -> Result<(crate::verify::VerifyReport, f64)> {
        let mut times = Vec::with_capacity(repeat);
        let mut last = None;
        for _ in 0..repeat {
            let start = Instant::now();
            let report = verify(&case.model, &case.model.space, &case.formula, options)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            last = Some(report);
        }
        Ok((last.expect("repeat >= 1"), median(times)))
    };
    let mut rows = Vec::with_capacity(spec.cases.len());
    for case in &spec.cases {
        let (report, time_ms) = timed(case, &VerifyOptions::default())?;
        let no_reuse = if spec.compare_reuse {
            let (r, t) = timed(case, &VerifyOptions::without_reuse())?;
            Some((r.stats.nodes_built, t))
        } else {
            None
        };
        rows.push(BenchRow {
            model: case.model_name.clone(),
            formula: case.formula.to_string(),
            calls: report.stats.calls,
            satisfied: report.satisfying().len(),
            violated: report.violating().len(),
            nodes_built: report.stats.nodes_built,
            nodes_reused: report.stats.nodes_reused,
            time_ms,
            no_reuse,
        });
    }
    Ok(rows)
}

const HEADER: [&str; 10] = [
    "model", "formula", "calls", "sat", "viol", "nodes", "reused", "time_ms", "nodes_noreuse",
    "time_ms_noreuse",
];

fn row_fields(r: &BenchRow) -> [String; 10] {
    let (nb, nt) = match r.no_reuse {
        Some((n, t)) => (n.to_string(), format!("{t:.3}")),
        None => ("-".into(), "-".into()),
    };
    [
        r.model.clone(),
        r.formula.clone(),
        r.calls.to_string(),
        r.satisfied.to_string(),
        r.violated.to_string(),
        r.nodes_built.to_string(),
        r.nodes_reused.to_string(),
        format!("{:.3}", r.time_ms),
        nb,
        nt,
    ]
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let body: Vec<[String; 10]> = rows.iter().map(row_fields).collect();
    let mut widths: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
    for fields in &body {
        for (w, f) in widths.iter_mut().zip(fields) {
            *w = (*w).max(f.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = HEADER.iter().map(|h| h.to_string()).collect();
    for fields in std::iter::once(&header[..]).chain(body.iter().map(|f| &f[..])) {
        let line: Vec<String> = fields
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (f, &w))| if i < 2 { format!("{f:<w$}") } else { format!("{f:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in rows {
        let fields = row_fields(r).map(|f| {
            if f.contains(',') || f.contains('"') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f
            }
        });
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mn_shape() {
        for n in 1..=6 {
            let m = gen_mn(n).unwrap();
            assert_eq!(m.ts.states.len(), (1 << (n + 1)) - 1);
            let self_loops = m.ts.transitions.iter().filter(|t| t.source == t.target).count();
            assert_eq!(self_loops, 1 << n);
            let values = mn_values(n);
            let mut leaves: Vec<u64> = values[values.len() - (1 << n)..].to_vec();
            leaves.sort();
            assert_eq!(leaves, (0..1u64 << n).collect::<Vec<_>>());
            m.check_totality().unwrap();
        }
        assert!(gen_mn(0).is_err());
    }

    #[test]
    fn m1_and_m2_values() {
        assert_eq!(mn_values(1), [0, 1, 0]);
        let v2 = mn_values(2);
        assert_eq!(&v2[3..], &[3, 1, 2, 0]);
        let m2 = gen_mn(2).unwrap();
        let x_ge_1 = m2.ts.prop_id("x_ge_1").unwrap();
        for (s, &x) in v2.iter().enumerate() {
            assert_eq!(m2.ts.has_label(s, x_ge_1), x >= 1);
        }
    }

    #[test]
    fn random_fts_is_deterministic_and_total() {
        for seed in 0..50 {
            let a = gen_random_fts(seed, 6, 4).unwrap();
            let b = gen_random_fts(seed, 6, 4).unwrap();
            assert_eq!(a, b);
            a.check_totality().unwrap();
            assert!(!a.space.is_empty());
        }
        assert!(gen_random_fts(0, 9, 2).is_err());
        assert!(gen_random_fts(0, 3, 6).is_err());
        assert!(gen_random_fts(0, 0, 2).is_err());
    }

    #[test]
    fn random_formula_depth_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(random_formula(&mut rng, &["p", "q"], 4).depth() <= 4);
        }
    }

    #[test]
    fn bench_tables() {
        let rows = run_bench(&BenchSpec::default()).unwrap();
        assert!(rows.is_empty());
        assert_eq!(render_table(&rows).lines().count(), 1);

        let mut spec = BenchSpec::mn_matrix(&[2]).unwrap();
        spec.compare_reuse = true;
        let rows = run_bench(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].calls, 1);
        for r in &rows {
            assert!(r.nodes_built <= r.no_reuse.unwrap().0);
        }
        let csv = render_csv(&rows);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("model,formula,calls"));
    }
}
