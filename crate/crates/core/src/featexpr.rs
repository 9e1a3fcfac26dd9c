//! Feature expressions over an explicitly enumerated configuration space.
//!
//! A configuration is a bit-vector over the features of its space (bit `i` set
//! iff feature `i` is enabled). A [`ConfigSpace`] is the finite set of valid
//! configurations; all satisfiability questions are answered by scanning it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on the number of features in one space (one `u64` per config).
pub const MAX_FEATURES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Feature {
    pub id: usize,
    pub name: String,
}

/// Propositional guard over features.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FeatExpr {
    True,
    False,
    Var(usize),
    Not(Box<FeatExpr>),
    And(Box<FeatExpr>, Box<FeatExpr>),
    Or(Box<FeatExpr>, Box<FeatExpr>),
}

impl FeatExpr {
    pub fn var(id: usize) -> Self {
        FeatExpr::Var(id)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        FeatExpr::Not(Box::new(self))
    }

    pub fn and(self, rhs: FeatExpr) -> Self {
        FeatExpr::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: FeatExpr) -> Self {
        FeatExpr::Or(Box::new(self), Box::new(rhs))
    }

    /// Conjunction of all expressions; `True` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = FeatExpr>) -> Self {
        parts
            .into_iter()
            .reduce(FeatExpr::and)
            .unwrap_or(FeatExpr::True)
    }

    pub fn eval(&self, k: Config) -> bool {
        match self {
            FeatExpr::True => true,
            FeatExpr::False => false,
            FeatExpr::Var(id) => k.has(*id),
            FeatExpr::Not(e) => !e.eval(k),
            FeatExpr::And(a, b) => a.eval(k) && b.eval(k),
            FeatExpr::Or(a, b) => a.eval(k) || b.eval(k),
        }
    }

    /// Largest feature id mentioned, if any.
    pub fn max_feature(&self) -> Option<usize> {
        match self {
            FeatExpr::True | FeatExpr::False => None,
            FeatExpr::Var(id) => Some(*id),
            FeatExpr::Not(e) => e.max_feature(),
            FeatExpr::And(a, b) | FeatExpr::Or(a, b) => a.max_feature().max(b.max_feature()),
        }
    }

    /// Rejects expressions mentioning features outside `0..feature_count`.
    pub fn check_features(&self, feature_count: usize) -> Result<()> {
        match self.max_feature() {
            Some(id) if id >= feature_count => Err(Error::Validation(format!(
                "feature #{id} is not declared (space has {feature_count} features)"
            ))),
            _ => Ok(()),
        }
    }

    /// Renders the expression with feature names, using the guard syntax of
    /// the model format (`!`, `&`, `|`).
    pub fn render(&self, features: &[Feature]) -> String {
        let mut out = String::new();
        self.render_into(features, 0, &mut out);
        out
    }

    // precedence: 0 = or, 1 = and, 2 = unary; operators parse left-associative
    fn render_into(&self, features: &[Feature], ctx: u8, out: &mut String) {
        match self {
            FeatExpr::True => out.push_str("true"),
            FeatExpr::False => out.push_str("false"),
            FeatExpr::Var(id) => match features.get(*id) {
                Some(f) => out.push_str(&f.name),
                None => out.push_str(&format!("#{id}")),
            },
            FeatExpr::Not(e) => {
                out.push('!');
                e.render_into(features, 2, out);
            }
            FeatExpr::And(a, b) => {
                if ctx > 1 {
                    out.push('(');
                }
                a.render_into(features, 1, out);
                out.push_str(" & ");
                b.render_into(features, 2, out);
                if ctx > 1 {
                    out.push(')');
                }
            }
            FeatExpr::Or(a, b) => {
                if ctx > 0 {
                    out.push('(');
                }
                a.render_into(features, 0, out);
                out.push_str(" | ");
                b.render_into(features, 1, out);
                if ctx > 0 {
                    out.push(')');
                }
            }
        }
    }

    /// Parses a guard such as `c & !f` against the given feature names.
    pub fn parse(text: &str, features: &[Feature]) -> std::result::Result<FeatExpr, String> {
        let names: HashMap<&str, usize> =
            features.iter().map(|f| (f.name.as_str(), f.id)).collect();
        let tokens = tokenize_guard(text)?;
        let mut parser = GuardParser {
            tokens,
            pos: 0,
            names: &names,
        };
        let expr = parser.or()?;
        if parser.pos != parser.tokens.len() {
            return Err(format!(
                "unexpected `{}` in guard `{text}`",
                parser.tokens[parser.pos]
            ));
        }
        Ok(expr)
    }
}

fn tokenize_guard(text: &str) -> std::result::Result<Vec<String>, String> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "!&|()".contains(c) {
            tokens.push(c.to_string());
            chars.next();
        } else if c.is_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(word);
        } else {
            return Err(format!("unexpected character `{c}` in guard `{text}`"));
        }
    }
    Ok(tokens)
}

struct GuardParser<'a> {
    tokens: Vec<String>,
    pos: usize,
    names: &'a HashMap<&'a str, usize>,
}

impl GuardParser<'_> {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn or(&mut self) -> std::result::Result<FeatExpr, String> {
        let mut lhs = self.and()?;
        while self.peek() == Some("|") {
            self.pos += 1;
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> std::result::Result<FeatExpr, String> {
        let mut lhs = self.unary()?;
        while self.peek() == Some("&") {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<FeatExpr, String> {
        let tok = self
            .peek()
            .ok_or_else(|| "guard ends unexpectedly".to_string())?
            .to_string();
        self.pos += 1;
        match tok.as_str() {
            "!" => Ok(self.unary()?.not()),
            "(" => {
                let e = self.or()?;
                if self.peek() != Some(")") {
                    return Err("missing `)` in guard".into());
                }
                self.pos += 1;
                Ok(e)
            }
            "true" => Ok(FeatExpr::True),
            "false" => Ok(FeatExpr::False),
            ")" | "&" | "|" => Err(format!("unexpected `{tok}` in guard")),
            name => self
                .names
                .get(name)
                .map(|&id| FeatExpr::Var(id))
                .ok_or_else(|| format!("undeclared feature `{name}`")),
        }
    }
}

/// One product variant: the set of enabled features as a bit-vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Config(pub u64);

impl Config {
    pub fn has(self, feature: usize) -> bool {
        feature < MAX_FEATURES && self.0 >> feature & 1 == 1
    }

    pub fn with(self, feature: usize) -> Config {
        Config(self.0 | 1 << feature)
    }

    pub fn from_features(ids: impl IntoIterator<Item = usize>) -> Config {
        ids.into_iter().fold(Config(0), Config::with)
    }

    /// Enabled feature names, in feature order.
    pub fn feature_names(self, features: &[Feature]) -> Vec<String> {
        features
            .iter()
            .filter(|f| self.has(f.id))
            .map(|f| f.name.clone())
            .collect()
    }

    /// `{c,f}`-style rendering; `{}` for the empty configuration.
    pub fn render(self, features: &[Feature]) -> String {
        format!("{{{}}}", self.feature_names(features).join(","))
    }
}

/// A finite set of valid configurations over a fixed feature list.
///
/// The feature list is shared between a space and all of its subspaces;
/// configurations are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSpace {
    features: Arc<[Feature]>,
    configs: Vec<Config>,
}

impl ConfigSpace {
    pub fn new(features: Vec<Feature>, configs: impl IntoIterator<Item = Config>) -> Result<Self> {
        Self::with_shared(validate_features(features)?, configs)
    }

    /// The full power set 2^F.
    pub fn full(features: Vec<Feature>) -> Result<Self> {
        let features = validate_features(features)?;
        if features.len() > 24 {
            return Err(Error::InvalidArgument(format!(
                "refusing to enumerate 2^{} configurations",
                features.len()
            )));
        }
        let configs = (0..1u64 << features.len()).map(Config);
        Self::with_shared(features, configs)
    }

    /// Builds features named after `names`, with dense ids in order.
    pub fn features_from_names<S: AsRef<str>>(names: &[S]) -> Vec<Feature> {
        names
            .iter()
            .enumerate()
            .map(|(id, n)| Feature {
                id,
                name: n.as_ref().to_string(),
            })
            .collect()
    }

    fn with_shared(
        features: Arc<[Feature]>,
        configs: impl IntoIterator<Item = Config>,
    ) -> Result<Self> {
        let mask = if features.len() == MAX_FEATURES {
            u64::MAX
        } else {
            (1u64 << features.len()) - 1
        };
        let set: BTreeSet<Config> = configs.into_iter().collect();
        if let Some(bad) = set.iter().find(|k| k.0 & !mask != 0) {
            return Err(Error::Validation(format!(
                "configuration {:#b} mentions undeclared features",
                bad.0
            )));
        }
        Ok(ConfigSpace {
            features,
            configs: set.into_iter().collect(),
        })
    }

    fn subspace(&self, configs: Vec<Config>) -> ConfigSpace {
        ConfigSpace {
            features: Arc::clone(&self.features),
            configs,
        }
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn feature_id(&self, name: &str) -> Option<usize> {
        self.features.iter().find(|f| f.name == name).map(|f| f.id)
    }

    pub fn configs(&self) -> &[Config] {
        &self.configs
    }

    pub fn iter(&self) -> impl Iterator<Item = Config> + '_ {
        self.configs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn contains(&self, k: Config) -> bool {
        self.configs.binary_search(&k).is_ok()
    }

    pub fn same_features(&self, other: &ConfigSpace) -> bool {
        Arc::ptr_eq(&self.features, &other.features) || self.features == other.features
    }

    pub fn is_subset_of(&self, other: &ConfigSpace) -> bool {
        self.same_features(other) && self.iter().all(|k| other.contains(k))
    }

    pub fn is_disjoint(&self, other: &ConfigSpace) -> bool {
        self.iter().all(|k| !other.contains(k))
    }

    pub fn union(&self, other: &ConfigSpace) -> ConfigSpace {
        let set: BTreeSet<Config> = self.iter().chain(other.iter()).collect();
        self.subspace(set.into_iter().collect())
    }

    /// `[[expr]]` restricted to this space.
    pub fn models(&self, expr: &FeatExpr) -> ConfigSpace {
        self.subspace(self.iter().filter(|&k| expr.eval(k)).collect())
    }

    /// Join abstraction: some valid configuration satisfies `expr`.
    pub fn alpha_join(&self, expr: &FeatExpr) -> bool {
        self.iter().any(|k| expr.eval(k))
    }

    /// Dual join abstraction: every valid configuration satisfies `expr`.
    /// Vacuously true on the empty space.
    pub fn alpha_join_dual(&self, expr: &FeatExpr) -> bool {
        self.iter().all(|k| expr.eval(k))
    }

    /// Splits into `([[expr]], [[!expr]])`.
    pub fn split(&self, expr: &FeatExpr) -> (ConfigSpace, ConfigSpace) {
        let (pos, neg): (Vec<Config>, Vec<Config>) = self.iter().partition(|&k| expr.eval(k));
        (self.subspace(pos), self.subspace(neg))
    }

    /// If this space is exactly the set of configurations of `within` that
    /// satisfy some conjunction of feature literals, returns that conjunction.
    pub fn as_cube(&self, within: &ConfigSpace) -> Option<FeatExpr> {
        let first = *self.configs.first()?;
        let mut literals = Vec::new();
        for f in self.features.iter() {
            let value = first.has(f.id);
            if self.iter().all(|k| k.has(f.id) == value) {
                let var = FeatExpr::Var(f.id);
                literals.push(if value { var } else { var.not() });
            }
        }
        let cube = FeatExpr::conjunction(literals);
        (within.models(&cube) == *self).then_some(cube)
    }

    /// `{}, {f}, {c,f}`-style listing.
    pub fn render(&self) -> String {
        self.iter()
            .map(|k| k.render(&self.features))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn validate_features(features: Vec<Feature>) -> Result<Arc<[Feature]>> {
    if features.len() > MAX_FEATURES {
        return Err(Error::Validation(format!(
            "at most {MAX_FEATURES} features are supported"
        )));
    }
    let mut seen = BTreeSet::new();
    for (i, f) in features.iter().enumerate() {
        if f.id != i {
            return Err(Error::Validation(format!(
                "feature `{}` has id {} but position {i}",
                f.name, f.id
            )));
        }
        if !seen.insert(f.name.as_str()) {
            return Err(Error::Validation(format!("duplicate feature `{}`", f.name)));
        }
    }
    Ok(features.into())
}

impl fmt::Display for ConfigSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: usize = 0;
    const F: usize = 1;

    fn vm_space() -> ConfigSpace {
        ConfigSpace::full(ConfigSpace::features_from_names(&["c", "f"])).unwrap()
    }

    fn cfg(ids: &[usize]) -> Config {
        Config::from_features(ids.iter().copied())
    }

    #[test]
    fn eval_vending_guards() {
        let e = FeatExpr::var(C).and(FeatExpr::var(F).not());
        assert!(e.eval(cfg(&[C])));
        assert!(!e.eval(cfg(&[C, F])));
        assert!(FeatExpr::True.eval(cfg(&[])));
    }

    #[test]
    fn models_and_joins() {
        let k = vm_space();
        assert_eq!(k.models(&FeatExpr::var(C)).configs(), &[cfg(&[C]), cfg(&[C, F])]);
        assert!(k.models(&FeatExpr::False).is_empty());
        let e = FeatExpr::var(C).not().or(FeatExpr::var(F));
        assert_eq!(
            k.models(&e).configs(),
            &[cfg(&[]), cfg(&[F]), cfg(&[C, F])]
        );

        assert!(k.alpha_join(&FeatExpr::var(C)));
        assert!(!k.alpha_join(&FeatExpr::False));
        assert!(!k.alpha_join(&FeatExpr::var(C).and(FeatExpr::var(C).not())));

        assert!(k.alpha_join_dual(&FeatExpr::True));
        assert!(!k.alpha_join_dual(&FeatExpr::var(C)));
        let not_f = FeatExpr::var(F).not();
        assert!(k.models(&not_f).alpha_join_dual(&not_f));
    }

    #[test]
    fn empty_space_joins() {
        let empty = vm_space().models(&FeatExpr::False);
        assert!(empty.alpha_join_dual(&FeatExpr::False));
        assert!(!empty.alpha_join(&FeatExpr::True));
    }

    #[test]
    fn split_partitions() {
        let k = vm_space();
        let (pos, neg) = k.split(&FeatExpr::var(C));
        assert_eq!(pos.configs(), &[cfg(&[C]), cfg(&[C, F])]);
        assert_eq!(neg.configs(), &[cfg(&[]), cfg(&[F])]);
        let (all, none) = k.split(&FeatExpr::True);
        assert_eq!(all, k);
        assert!(none.is_empty());
    }

    #[test]
    fn guard_parse_and_render() {
        let k = vm_space();
        let e = FeatExpr::parse("c & !f | !(c | f)", k.features()).unwrap();
        let printed = e.render(k.features());
        assert_eq!(printed, "c & !f | !(c | f)");
        assert_eq!(FeatExpr::parse(&printed, k.features()).unwrap(), e);
        assert!(FeatExpr::parse("c & g", k.features()).is_err());
        assert!(FeatExpr::parse("c &", k.features()).is_err());
        assert!(FeatExpr::parse("(c", k.features()).is_err());
    }

    #[test]
    fn cube_detection() {
        let k = vm_space();
        let sub = k.models(&FeatExpr::var(C).and(FeatExpr::var(F).not()));
        let cube = sub.as_cube(&k).unwrap();
        assert_eq!(cube.render(k.features()), "c & !f");
        let odd = k.models(&FeatExpr::var(C).not().or(FeatExpr::var(F)));
        assert!(odd.as_cube(&k).is_none());
        assert_eq!(k.as_cube(&k), Some(FeatExpr::True));
    }

    #[test]
    fn rejects_bad_spaces() {
        let feats = ConfigSpace::features_from_names(&["a", "a"]);
        assert!(ConfigSpace::full(feats).is_err());
        let feats = ConfigSpace::features_from_names(&["a"]);
        assert!(ConfigSpace::new(feats, [Config(0b10)]).is_err());
        assert!(FeatExpr::var(3).check_features(2).is_err());
    }

    #[test]
    fn render_configs() {
        let k = vm_space();
        assert_eq!(k.render(), "{}, {c}, {f}, {c,f}");
    }
}
