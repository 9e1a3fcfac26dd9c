//! CTL formulas in negation normal form.
//!
//! [`Ctl`] is the owned syntax tree produced by the parser. A [`Closure`]
//! interns every member of `sub(Φ)` (including the one-step expansions of
//! each until/release formula) so that game nodes can key on a dense
//! [`FormulaId`].

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quant {
    A,
    E,
}

impl Quant {
    pub fn dual(self) -> Quant {
        match self {
            Quant::A => Quant::E,
            Quant::E => Quant::A,
        }
    }
}

/// Path formulas, always under a path quantifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Next(Ctl),
    Until(Ctl, Ctl),
    Release(Ctl, Ctl),
}

/// A CTL state formula in NNF. Negation only occurs as literal polarity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ctl {
    True,
    False,
    Lit { prop: String, positive: bool },
    And(Box<Ctl>, Box<Ctl>),
    Or(Box<Ctl>, Box<Ctl>),
    Quantified(Quant, Box<Path>),
}

impl Ctl {
    pub fn prop(name: &str) -> Ctl {
        Ctl::Lit {
            prop: name.to_string(),
            positive: true,
        }
    }

    pub fn neg_prop(name: &str) -> Ctl {
        Ctl::Lit {
            prop: name.to_string(),
            positive: false,
        }
    }

    pub fn and(self, rhs: Ctl) -> Ctl {
        Ctl::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Ctl) -> Ctl {
        Ctl::Or(Box::new(self), Box::new(rhs))
    }

    pub fn next(q: Quant, phi: Ctl) -> Ctl {
        Ctl::Quantified(q, Box::new(Path::Next(phi)))
    }

    pub fn until(q: Quant, lhs: Ctl, rhs: Ctl) -> Ctl {
        Ctl::Quantified(q, Box::new(Path::Until(lhs, rhs)))
    }

    pub fn release(q: Quant, lhs: Ctl, rhs: Ctl) -> Ctl {
        Ctl::Quantified(q, Box::new(Path::Release(lhs, rhs)))
    }

    /// NNF of `!self`, via De Morgan and the path dualities.
    pub fn negate(&self) -> Ctl {
        match self {
            Ctl::True => Ctl::False,
            Ctl::False => Ctl::True,
            Ctl::Lit { prop, positive } => Ctl::Lit {
                prop: prop.clone(),
                positive: !positive,
            },
            Ctl::And(a, b) => a.negate().or(b.negate()),
            Ctl::Or(a, b) => a.negate().and(b.negate()),
            Ctl::Quantified(q, path) => {
                let q = q.dual();
                match path.as_ref() {
                    Path::Next(phi) => Ctl::next(q, phi.negate()),
                    Path::Until(a, b) => Ctl::release(q, a.negate(), b.negate()),
                    Path::Release(a, b) => Ctl::until(q, a.negate(), b.negate()),
                }
            }
        }
    }

    /// Depth of the syntax tree; literals and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Ctl::True | Ctl::False | Ctl::Lit { .. } => 0,
            Ctl::And(a, b) | Ctl::Or(a, b) => 1 + a.depth().max(b.depth()),
            Ctl::Quantified(_, path) => match path.as_ref() {
                Path::Next(phi) => 1 + phi.depth(),
                Path::Until(a, b) | Path::Release(a, b) => 1 + a.depth().max(b.depth()),
            },
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Ctl::True | Ctl::False | Ctl::Lit { .. } => 1,
            Ctl::And(a, b) | Ctl::Or(a, b) => 1 + a.size() + b.size(),
            Ctl::Quantified(_, path) => match path.as_ref() {
                Path::Next(phi) => 1 + phi.size(),
                Path::Until(a, b) | Path::Release(a, b) => 1 + a.size() + b.size(),
            },
        }
    }

    /// Number of until/release subformulas.
    pub fn fixpoint_count(&self) -> usize {
        match self {
            Ctl::True | Ctl::False | Ctl::Lit { .. } => 0,
            Ctl::And(a, b) | Ctl::Or(a, b) => a.fixpoint_count() + b.fixpoint_count(),
            Ctl::Quantified(_, path) => match path.as_ref() {
                Path::Next(phi) => phi.fixpoint_count(),
                Path::Until(a, b) | Path::Release(a, b) => {
                    1 + a.fixpoint_count() + b.fixpoint_count()
                }
            },
        }
    }

    /// Atomic propositions, in first-occurrence order.
    pub fn props(&self) -> Vec<String> {
        fn walk(phi: &Ctl, out: &mut Vec<String>) {
            match phi {
                Ctl::True | Ctl::False => {}
                Ctl::Lit { prop, .. } => {
                    if !out.contains(prop) {
                        out.push(prop.clone());
                    }
                }
                Ctl::And(a, b) | Ctl::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Ctl::Quantified(_, path) => match path.as_ref() {
                    Path::Next(phi) => walk(phi, out),
                    Path::Until(a, b) | Path::Release(a, b) => {
                        walk(a, out);
                        walk(b, out);
                    }
                },
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn parse(text: &str) -> Result<Ctl> {
        parse_formula(text)
    }
}

/// One-step unfolding of an until or release formula:
/// `Æ(φ1 U φ2)` becomes `φ2 ∨ (φ1 ∧ Æ◯Æ(φ1 U φ2))` and
/// `Æ(φ1 V φ2)` becomes `φ2 ∧ (φ1 ∨ Æ◯Æ(φ1 V φ2))`.
pub fn expand(phi: &Ctl) -> Result<Ctl> {
    match phi {
        Ctl::Quantified(q, path) => match path.as_ref() {
            Path::Until(a, b) => Ok(b.clone().or(a.clone().and(Ctl::next(*q, phi.clone())))),
            Path::Release(a, b) => Ok(b.clone().and(a.clone().or(Ctl::next(*q, phi.clone())))),
            Path::Next(_) => Err(Error::InvalidArgument(format!(
                "cannot expand `{phi}`: not an until or release formula"
            ))),
        },
        _ => Err(Error::InvalidArgument(format!(
            "cannot expand `{phi}`: not an until or release formula"
        ))),
    }
}

impl fmt::Display for Ctl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ctl::True => write!(f, "true"),
            Ctl::False => write!(f, "false"),
            Ctl::Lit { prop, positive } => {
                if *positive {
                    write!(f, "{prop}")
                } else {
                    write!(f, "!{prop}")
                }
            }
            Ctl::And(a, b) => write!(f, "({a} & {b})"),
            Ctl::Or(a, b) => write!(f, "({a} | {b})"),
            Ctl::Quantified(q, path) => {
                let q = match q {
                    Quant::A => "A",
                    Quant::E => "E",
                };
                match path.as_ref() {
                    Path::Next(phi) => write!(f, "{q}X {phi}"),
                    Path::Until(a, b) => write!(f, "{q}[{a} U {b}]"),
                    Path::Release(a, b) => write!(f, "{q}[{a} V {b}]"),
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

const KEYWORDS: &[&str] = &[
    "true", "false", "A", "E", "U", "V", "AX", "EX", "AF", "EF", "AG", "EG",
];

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '>' | '<' | '=')
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((pos, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.column(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn or(&mut self) -> Result<Ctl> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ctl> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ctl> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("formula ends unexpectedly");
        };
        match tok {
            Tok::Not => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Tok::LParen => {
                self.pos += 1;
                let phi = self.or()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(phi)
            }
            Tok::Ident(word) => {
                self.pos += 1;
                match word.as_str() {
                    "true" => Ok(Ctl::True),
                    "false" => Ok(Ctl::False),
                    "A" => self.path(Quant::A),
                    "E" => self.path(Quant::E),
                    "AX" => Ok(Ctl::next(Quant::A, self.unary()?)),
                    "EX" => Ok(Ctl::next(Quant::E, self.unary()?)),
                    "AF" => Ok(Ctl::until(Quant::A, Ctl::True, self.unary()?)),
                    "EF" => Ok(Ctl::until(Quant::E, Ctl::True, self.unary()?)),
                    "AG" => Ok(Ctl::release(Quant::A, Ctl::False, self.unary()?)),
                    "EG" => Ok(Ctl::release(Quant::E, Ctl::False, self.unary()?)),
                    "U" | "V" => {
                        self.pos -= 1;
                        self.err(format!("unexpected `{word}`"))
                    }
                    _ => Ok(Ctl::prop(&word)),
                }
            }
            other => self.err(format!("unexpected {}", describe(&other))),
        }
    }

    fn path(&mut self, q: Quant) -> Result<Ctl> {
        let close = match self.next() {
            Some(Tok::LBracket) => Tok::RBracket,
            Some(Tok::LParen) => Tok::RParen,
            _ => {
                self.pos -= 1;
                return self.err("expected `[` after path quantifier");
            }
        };
        let lhs = self.or()?;
        let op = match self.next() {
            Some(Tok::Ident(w)) if w == "U" || w == "V" => w,
            _ => {
                self.pos -= 1;
                return self.err("expected `U` or `V`");
            }
        };
        let rhs = self.or()?;
        let closer = if close == Tok::RBracket { "`]`" } else { "`)`" };
        self.expect(close, closer)?;
        Ok(if op == "U" {
            Ctl::until(q, lhs, rhs)
        } else {
            Ctl::release(q, lhs, rhs)
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(w) => format!("`{w}`"),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
    }
}

fn parse_formula(text: &str) -> Result<Ctl> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count() + 1,
    };
    let phi = p.or()?;
    if p.pos < p.toks.len() {
        let t = p.toks[p.pos].1.clone();
        return p.err(format!("unexpected {} after formula", describe(&t)));
    }
    Ok(phi)
}

/// True if `word` cannot be used as a proposition name.
pub fn is_reserved(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

// ---------------------------------------------------------------------------
// Closure

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaId(pub u32);

impl FormulaId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A hash-consed closure member. Children are ids into the same closure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Lit { prop: String, positive: bool },
    And(FormulaId, FormulaId),
    Or(FormulaId, FormulaId),
    Next(Quant, FormulaId),
    Until(Quant, FormulaId, FormulaId),
    Release(Quant, FormulaId, FormulaId),
}

impl Formula {
    pub fn is_fixpoint(&self) -> bool {
        matches!(self, Formula::Until(..) | Formula::Release(..))
    }
}

/// `sub(Φ)`: every member is interned exactly once. For each until/release
/// member, `expansion` points at its one-step unfolding.
#[derive(Debug, Clone)]
pub struct Closure {
    nodes: Vec<Formula>,
    index: HashMap<Formula, FormulaId>,
    expansion: HashMap<FormulaId, FormulaId>,
    root: FormulaId,
}

impl Closure {
    pub fn new(phi: &Ctl) -> Closure {
        let mut c = Closure {
            nodes: Vec::new(),
            index: HashMap::new(),
            expansion: HashMap::new(),
            root: FormulaId(0),
        };
        c.root = c.intern_tree(phi);
        c
    }

    fn intern(&mut self, f: Formula) -> FormulaId {
        if let Some(&id) = self.index.get(&f) {
            return id;
        }
        let id = FormulaId(self.nodes.len() as u32);
        self.nodes.push(f.clone());
        self.index.insert(f, id);
        id
    }

    fn intern_tree(&mut self, phi: &Ctl) -> FormulaId {
        match phi {
            Ctl::True => self.intern(Formula::True),
            Ctl::False => self.intern(Formula::False),
            Ctl::Lit { prop, positive } => self.intern(Formula::Lit {
                prop: prop.clone(),
                positive: *positive,
            }),
            Ctl::And(a, b) => {
                let (a, b) = (self.intern_tree(a), self.intern_tree(b));
                self.intern(Formula::And(a, b))
            }
            Ctl::Or(a, b) => {
                let (a, b) = (self.intern_tree(a), self.intern_tree(b));
                self.intern(Formula::Or(a, b))
            }
            Ctl::Quantified(q, path) => match path.as_ref() {
                Path::Next(inner) => {
                    let inner = self.intern_tree(inner);
                    self.intern(Formula::Next(*q, inner))
                }
                Path::Until(a, b) => {
                    let (a, b) = (self.intern_tree(a), self.intern_tree(b));
                    self.intern_fixpoint(Formula::Until(*q, a, b), *q, a, b, true)
                }
                Path::Release(a, b) => {
                    let (a, b) = (self.intern_tree(a), self.intern_tree(b));
                    self.intern_fixpoint(Formula::Release(*q, a, b), *q, a, b, false)
                }
            },
        }
    }

    fn intern_fixpoint(
        &mut self,
        f: Formula,
        q: Quant,
        lhs: FormulaId,
        rhs: FormulaId,
        until: bool,
    ) -> FormulaId {
        if let Some(&id) = self.index.get(&f) {
            return id;
        }
        let id = self.intern(f);
        let next = self.intern(Formula::Next(q, id));
        let exp = if until {
            let inner = self.intern(Formula::And(lhs, next));
            self.intern(Formula::Or(rhs, inner))
        } else {
            let inner = self.intern(Formula::Or(lhs, next));
            self.intern(Formula::And(rhs, inner))
        };
        self.expansion.insert(id, exp);
        id
    }

    pub fn root(&self) -> FormulaId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: FormulaId) -> &Formula {
        &self.nodes[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = FormulaId> {
        (0..self.nodes.len() as u32).map(FormulaId)
    }

    pub fn find(&self, phi: &Ctl) -> Option<FormulaId> {
        let f = match phi {
            Ctl::True => Formula::True,
            Ctl::False => Formula::False,
            Ctl::Lit { prop, positive } => Formula::Lit {
                prop: prop.clone(),
                positive: *positive,
            },
            Ctl::And(a, b) => Formula::And(self.find(a)?, self.find(b)?),
            Ctl::Or(a, b) => Formula::Or(self.find(a)?, self.find(b)?),
            Ctl::Quantified(q, path) => match path.as_ref() {
                Path::Next(inner) => Formula::Next(*q, self.find(inner)?),
                Path::Until(a, b) => Formula::Until(*q, self.find(a)?, self.find(b)?),
                Path::Release(a, b) => Formula::Release(*q, self.find(a)?, self.find(b)?),
            },
        };
        self.index.get(&f).copied()
    }

    /// The expansion member of an until/release formula.
    pub fn expansion(&self, id: FormulaId) -> Option<FormulaId> {
        self.expansion.get(&id).copied()
    }

    /// Rebuilds the syntax tree of a member.
    pub fn to_ctl(&self, id: FormulaId) -> Ctl {
        match self.get(id) {
            Formula::True => Ctl::True,
            Formula::False => Ctl::False,
            Formula::Lit { prop, positive } => Ctl::Lit {
                prop: prop.clone(),
                positive: *positive,
            },
            Formula::And(a, b) => self.to_ctl(*a).and(self.to_ctl(*b)),
            Formula::Or(a, b) => self.to_ctl(*a).or(self.to_ctl(*b)),
            Formula::Next(q, a) => Ctl::next(*q, self.to_ctl(*a)),
            Formula::Until(q, a, b) => Ctl::until(*q, self.to_ctl(*a), self.to_ctl(*b)),
            Formula::Release(q, a, b) => Ctl::release(*q, self.to_ctl(*a), self.to_ctl(*b)),
        }
    }

    pub fn render(&self, id: FormulaId) -> String {
        self.to_ctl(id).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn au(a: Ctl, b: Ctl) -> Ctl {
        Ctl::until(Quant::A, a, b)
    }

    #[test]
    fn parse_paper_properties() {
        let phi1 = Ctl::parse("A (!r U r)").unwrap();
        assert_eq!(phi1, au(Ctl::neg_prop("r"), Ctl::prop("r")));
        assert_eq!(Ctl::parse("A[!r U r]").unwrap(), phi1);
        assert_eq!(Ctl::parse("!!p").unwrap(), Ctl::prop("p"));
        assert_eq!(
            Ctl::parse("AF (x>=1)").unwrap(),
            au(Ctl::True, Ctl::prop("x>=1"))
        );
    }

    #[test]
    fn parse_sugar_and_precedence() {
        assert_eq!(
            Ctl::parse("a | b & c").unwrap(),
            Ctl::prop("a").or(Ctl::prop("b").and(Ctl::prop("c")))
        );
        assert_eq!(
            Ctl::parse("EG p").unwrap(),
            Ctl::release(Quant::E, Ctl::False, Ctl::prop("p"))
        );
        assert_eq!(
            Ctl::parse("AX p & q").unwrap(),
            Ctl::next(Quant::A, Ctl::prop("p")).and(Ctl::prop("q"))
        );
    }

    #[test]
    fn negation_dualities() {
        assert_eq!(
            Ctl::parse("!A[p U q]").unwrap(),
            Ctl::release(Quant::E, Ctl::neg_prop("p"), Ctl::neg_prop("q"))
        );
        assert_eq!(
            Ctl::parse("!(AX p | q)").unwrap(),
            Ctl::next(Quant::E, Ctl::neg_prop("p")).and(Ctl::neg_prop("q"))
        );
        assert_eq!(Ctl::parse("!AF p").unwrap(), Ctl::parse("EG !p").unwrap());
    }

    #[test]
    fn syntax_errors_carry_position() {
        for bad in ["", "A[p U", "p &", "A p", "(p", "p q", "A[p W q]", "p $ q", "U"] {
            match Ctl::parse(bad) {
                Err(Error::Syntax { pos, .. }) => assert!(pos >= 1, "{bad}"),
                other => panic!("expected syntax error for {bad:?}, got {other:?}"),
            }
        }
        match Ctl::parse("p $ q") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            _ => unreachable!(),
        }
    }

    #[test]
    fn expand_until_and_release() {
        let phi = au(Ctl::neg_prop("r"), Ctl::prop("r"));
        let exp = expand(&phi).unwrap();
        assert_eq!(
            exp,
            Ctl::prop("r").or(Ctl::neg_prop("r").and(Ctl::next(Quant::A, phi.clone())))
        );
        let (p1, p2) = (Ctl::prop("a"), Ctl::prop("b"));
        let ev = Ctl::release(Quant::E, p1.clone(), p2.clone());
        assert_eq!(
            expand(&ev).unwrap(),
            p2.and(p1.or(Ctl::next(Quant::E, ev.clone())))
        );
        assert!(expand(&Ctl::prop("r")).is_err());
        assert!(expand(&Ctl::next(Quant::A, Ctl::True)).is_err());
    }

    #[test]
    fn closure_of_au_has_six_members() {
        let phi = Ctl::parse("A[!r U r]").unwrap();
        let c = Closure::new(&phi);
        assert_eq!(c.len(), 6);
        let exp = expand(&phi).unwrap();
        let expected = [
            phi.clone(),
            exp.clone(),
            Ctl::neg_prop("r").and(Ctl::next(Quant::A, phi.clone())),
            Ctl::next(Quant::A, phi.clone()),
            Ctl::neg_prop("r"),
            Ctl::prop("r"),
        ];
        for member in &expected {
            assert!(c.find(member).is_some(), "missing {member}");
        }
        assert_eq!(c.expansion(c.root()), c.find(&exp));
        assert_eq!(c.to_ctl(c.root()), phi);

        assert_eq!(Closure::new(&Ctl::parse("E[!r U r]").unwrap()).len(), 6);
        assert_eq!(Closure::new(&Ctl::prop("r")).len(), 1);
    }

    #[test]
    fn shared_subformulas_intern_once() {
        let c = Closure::new(&Ctl::parse("(p & q) | AX (p & q)").unwrap());
        // p, q, p&q, AX(p&q), or
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn display_round_trips() {
        for text in ["A[!r U r]", "E[(a | b) V !c] & AX EF d", "!(p & AG q)", "true | false"] {
            let phi = Ctl::parse(text).unwrap();
            assert_eq!(Ctl::parse(&phi.to_string()).unwrap(), phi, "{text}");
        }
    }
}
