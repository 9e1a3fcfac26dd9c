//! Line-oriented text format for featured transition systems.
//!
//! ```text
//! features: c f;
//! configs: -- c- -f cf;      # or `configs: all;`
//! states: s0* s1 s2;         # `*` marks initial states
//! labels: s2: r;
//! trans: s0 -pay[!f]-> s1;
//!        s0 -free[f]-> s2;
//!        s1 -drink-> s2;     # missing guard means `true`
//! ```
//!
//! Statements end with `;`, `#` starts a comment. A statement beginning with
//! a section keyword opens that section; later statements without a keyword
//! belong to the most recent section. Optional `props:` and `actions:`
//! sections fix the id order of propositions and actions.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::ctl::is_reserved;
use crate::error::{Error, Result};
use crate::featexpr::{Config, ConfigSpace, FeatExpr};
use crate::models::{Fts, Transition, Ts};

const SECTIONS: &[&str] = &["features", "configs", "props", "actions", "states", "labels", "trans"];

pub fn load_model(path: &Path) -> Result<Fts> {
    let text = std::fs::read_to_string(path)?;
    parse_model(&text)
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn is_ident(word: &str) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Splits the text into `(line, statement)` pairs, dropping comments.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for c in line.chars() {
            if c == ';' {
                if let Some(l) = start.take() {
                    out.push((l, std::mem::take(&mut current)));
                }
                current.clear();
            } else {
                if start.is_none() && !c.is_whitespace() {
                    start = Some(i + 1);
                }
                current.push(c);
            }
        }
        current.push('\n');
    }
    if let Some(l) = start {
        out.push((l, current));
    }
    out
}

#[derive(Default)]
struct Builder {
    features: Option<Vec<String>>,
    configs: Option<(usize, Vec<String>)>,
    props: Vec<String>,
    actions: Vec<String>,
    states: Vec<String>,
    initial: Vec<usize>,
    state_index: HashMap<String, usize>,
    labels: Vec<(usize, String, Vec<String>)>,
    trans: Vec<(usize, String, String, Option<String>, String)>,
}

pub fn parse_model(text: &str) -> Result<Fts> {
    let mut b = Builder::default();
    let mut section: Option<&str> = None;
    let mut seen_states = false;

    for (line, stmt) in statements(text) {
        let stmt = stmt.trim();
        let mut body = stmt;
        if let Some((head, rest)) = stmt.split_once(':') {
            let head = head.trim();
            if let Some(&kw) = SECTIONS.iter().find(|&&s| s == head) {
                section = Some(kw);
                body = rest.trim();
                if body.is_empty() {
                    continue;
                }
            }
        }
        match section {
            None => return perr(line, format!("statement `{body}` outside of any section")),
            Some("features") => {
                if b.features.is_some() {
                    return perr(line, "duplicate `features` section");
                }
                let names: Vec<String> = body.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = names.iter().find(|n| !is_ident(n)) {
                    return perr(line, format!("invalid feature name `{bad}`"));
                }
                b.features = Some(names);
            }
            Some("configs") => {
                if b.configs.is_some() {
                    return perr(line, "duplicate `configs` section");
                }
                b.configs = Some((line, body.split_whitespace().map(str::to_string).collect()));
            }
            Some("props") => {
                for p in body.split_whitespace() {
                    if !is_ident(p) && !p.contains(['>', '<', '=']) || is_reserved(p) {
                        return perr(line, format!("invalid proposition name `{p}`"));
                    }
                    if !b.props.iter().any(|q| q == p) {
                        b.props.push(p.to_string());
                    }
                }
            }
            Some("actions") => {
                for a in body.split_whitespace() {
                    if !is_ident(a) {
                        return perr(line, format!("invalid action name `{a}`"));
                    }
                    if !b.actions.iter().any(|q| q == a) {
                        b.actions.push(a.to_string());
                    }
                }
            }
            Some("states") => {
                if seen_states {
                    return perr(line, "duplicate `states` section");
                }
                seen_states = true;
                for tok in body.split_whitespace() {
                    let (name, init) = match tok.strip_suffix('*') {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    if !is_ident(name) {
                        return perr(line, format!("invalid state name `{name}`"));
                    }
                    if b.state_index.contains_key(name) {
                        return perr(line, format!("duplicate state `{name}`"));
                    }
                    let id = b.states.len();
                    b.state_index.insert(name.to_string(), id);
                    b.states.push(name.to_string());
                    if init {
                        b.initial.push(id);
                    }
                }
            }
            Some("labels") => {
                let Some((state, props)) = body.split_once(':') else {
                    return perr(line, format!("expected `state: props` in labels, got `{body}`"));
                };
                b.labels.push((
                    line,
                    state.trim().to_string(),
                    props.split_whitespace().map(str::to_string).collect(),
                ));
            }
            Some("trans") => {
                let (src, action, guard, dst) = parse_transition(body).map_err(|msg| Error::Parse { line, msg })?;
                b.trans.push((line, src, action, guard, dst));
            }
            Some(other) => unreachable!("unknown section {other}"),
        }
    }
    b.finish()
}

/// `src -action[guard]-> dst`
fn parse_transition(body: &str) -> std::result::Result<(String, String, Option<String>, String), String> {
    let bad = || format!("expected `src -action[guard]-> dst`, got `{}`", body.trim());
    let (lhs, dst) = body.rsplit_once("->").ok_or_else(bad)?;
    let dst = dst.trim();
    let (src, label) = lhs.trim().split_once('-').ok_or_else(bad)?;
    let src = src.trim();
    let label = label.trim();
    let (action, guard) = match label.split_once('[') {
        Some((action, rest)) => {
            let guard = rest.strip_suffix(']').ok_or_else(|| format!("unterminated guard in `{}`", body.trim()))?;
            (action.trim(), Some(guard.trim().to_string()))
        }
        None => (label, None),
    };
    for (what, name) in [("source state", src), ("action", action), ("target state", dst)] {
        if !is_ident(name) {
            return Err(format!("invalid {what} `{name}` in `{}`", body.trim()));
        }
    }
    Ok((src.to_string(), action.to_string(), guard, dst.to_string()))
}

impl Builder {
    fn state(&self, line: usize, name: &str) -> Result<usize> {
        match self.state_index.get(name) {
            Some(&id) => Ok(id),
            None => perr(line, format!("undeclared state `{name}`")),
        }
    }

    fn finish(mut self) -> Result<Fts> {
        let feature_names = self.features.take().unwrap_or_default();
        let features = ConfigSpace::features_from_names(&feature_names);
        let space = match self.configs.take() {
            None => ConfigSpace::full(features.clone())?,
            Some((_, toks)) if toks == ["all"] => ConfigSpace::full(features.clone())?,
            Some((line, toks)) => {
                let mut configs = Vec::new();
                for tok in &toks {
                    let chars: Vec<char> = tok.chars().collect();
                    if chars.len() != features.len() {
                        return perr(
                            line,
                            format!(
                                "configuration `{tok}` has {} symbols, expected one per feature ({})",
                                chars.len(),
                                features.len()
                            ),
                        );
                    }
                    let k = Config::from_features(
                        chars
                            .iter()
                            .enumerate()
                            .filter(|(_, &c)| c != '-' && c != '0')
                            .map(|(i, _)| i),
                    );
                    configs.push(k);
                }
                if configs.is_empty() {
                    return perr(line, "empty configuration set");
                }
                ConfigSpace::new(features.clone(), configs)?
            }
        };

        if self.states.is_empty() {
            return Err(Error::Validation("model declares no states".into()));
        }
        if self.initial.is_empty() {
            return Err(Error::Validation(
                "model has no initial state (mark one with `*`)".into(),
            ));
        }

        let mut labels = vec![Vec::new(); self.states.len()];
        for (line, state, props) in std::mem::take(&mut self.labels) {
            let s = self.state(line, &state)?;
            for p in props {
                if is_reserved(&p) {
                    return perr(line, format!("`{p}` is a reserved word, not a proposition"));
                }
                let id = match self.props.iter().position(|q| *q == p) {
                    Some(id) => id,
                    None => {
                        self.props.push(p);
                        self.props.len() - 1
                    }
                };
                if !labels[s].contains(&id) {
                    labels[s].push(id);
                }
            }
        }
        for l in labels.iter_mut() {
            l.sort_unstable();
        }

        let mut transitions = Vec::new();
        let mut guards = Vec::new();
        for (line, src, action, guard, dst) in std::mem::take(&mut self.trans) {
            let source = self.state(line, &src)?;
            let target = self.state(line, &dst)?;
            let action = match self.actions.iter().position(|a| *a == action) {
                Some(id) => id,
                None => {
                    self.actions.push(action);
                    self.actions.len() - 1
                }
            };
            let guard = match guard {
                None => FeatExpr::True,
                Some(text) => FeatExpr::parse(&text, space.features()).map_err(|msg| Error::Parse { line, msg })?,
            };
            transitions.push(Transition {
                source,
                action,
                target,
            });
            guards.push(guard);
        }

        let ts = Ts {
            states: self.states,
            actions: self.actions,
            props: self.props,
            initial: self.initial,
            labels,
            transitions,
        };
        let fts = Fts::new(ts, space, guards)?;
        fts.check_totality()?;
        Ok(fts)
    }
}

/// Serializes an FTS in the text format; `parse_model` reads it back to a
/// structurally equal model.
pub fn write_model(fts: &Fts) -> String {
    let features = fts.space.features();
    let ts = &fts.ts;
    let mut out = String::new();
    let names: Vec<&str> = features.iter().map(|f| f.name.as_str()).collect();
    let _ = writeln!(out, "features: {};", names.join(" "));
    let full = features.len() <= 24 && fts.space.len() == 1usize << features.len();
    if full {
        out.push_str("configs: all;\n");
    } else {
        let single_char = features.iter().all(|f| f.name.chars().count() == 1);
        let toks: Vec<String> = fts
            .space
            .iter()
            .map(|k| {
                features
                    .iter()
                    .map(|f| match (k.has(f.id), single_char) {
                        (false, _) => '-',
                        (true, true) => f.name.chars().next().unwrap_or('1'),
                        (true, false) => '1',
                    })
                    .collect()
            })
            .collect();
        let _ = writeln!(out, "configs: {};", toks.join(" "));
    }
    if !ts.props.is_empty() {
        let _ = writeln!(out, "props: {};", ts.props.join(" "));
    }
    if !ts.actions.is_empty() {
        let _ = writeln!(out, "actions: {};", ts.actions.join(" "));
    }
    let states: Vec<String> = ts
        .states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if ts.initial.contains(&i) {
                format!("{s}*")
            } else {
                s.clone()
            }
        })
        .collect();
    let _ = writeln!(out, "states: {};", states.join(" "));
    let labeled: Vec<usize> = (0..ts.states.len()).filter(|&s| !ts.labels[s].is_empty()).collect();
    if !labeled.is_empty() {
        out.push_str("labels:\n");
        for s in labeled {
            let props: Vec<&str> = ts.labels[s].iter().map(|&p| ts.props[p].as_str()).collect();
            let _ = writeln!(out, "  {}: {};", ts.states[s], props.join(" "));
        }
    }
    if !ts.transitions.is_empty() {
        out.push_str("trans:\n");
        for (t, g) in ts.transitions.iter().zip(&fts.guards) {
            let guard = match g {
                FeatExpr::True => String::new(),
                g => format!("[{}]", g.render(features)),
            };
            let _ = writeln!(
                out,
                "  {} -{}{}-> {};",
                ts.states[t.source], ts.actions[t.action], guard, ts.states[t.target]
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::gen_vending_machine;

    const VENDING: &str = "\
features: c f;
configs: -- c- -f cf;
states: s0* s1 s2;
labels: s2: r;
trans: s0 -pay[!f]-> s1; s0 -free[f]-> s2; s1 -drink-> s2; s1 -cancel[c]-> s0; s2 -take-> s0;
";

    #[test]
    fn parses_vending_machine() {
        let fts = parse_model(VENDING).unwrap();
        assert_eq!(fts, gen_vending_machine());
    }

    #[test]
    fn round_trip() {
        let vm = gen_vending_machine();
        assert_eq!(parse_model(&write_model(&vm)).unwrap(), vm);
    }

    #[test]
    fn comments_and_multiline_sections() {
        let text = "# vending\nfeatures: c f; # two\nconfigs: all;\nstates: s0* s1 s2;\nlabels:\n  s2: r;\ntrans:\n  s0 -pay[!f]-> s1;\n  s0 -free[f]-> s2;\n  s1 -drink-> s2;\n  s1 -cancel[c]-> s0;\n  s2 -take-> s0;\n";
        assert_eq!(parse_model(text).unwrap(), gen_vending_machine());
    }

    fn line_of(text: &str) -> usize {
        match parse_model(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("features: c;\nstates: s0*;\ntrans: s0 -a[g]-> s0;\n"), 3);
        assert_eq!(line_of("features: c;\nstates: s0*;\n\ntrans: s0 -a-> s9;\n"), 4);
        assert_eq!(line_of("features: c f;\nconfigs: c;\nstates: s0*;\n"), 2);
        assert_eq!(line_of("s0 -a-> s0;\n"), 1);
        assert_eq!(line_of("states: s0*;\ntrans: s0 a s0;\n"), 2);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            parse_model("states: s0 s1;\ntrans: s0 -a-> s1; s1 -a-> s0;\n"),
            Err(Error::Validation(_))
        ));
        // s1 deadlocks in variants without c
        assert!(matches!(
            parse_model("features: c;\nstates: s0* s1;\ntrans: s0 -a-> s1; s1 -b[c]-> s0;\n"),
            Err(Error::Validation(_))
        ));
    }
}
