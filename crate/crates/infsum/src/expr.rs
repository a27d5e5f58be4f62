//! The expression language read by `infsum eval`.
//!
//! ```text
//! # comments run to the end of the line
//! mul(1/2, 3/4)
//! P@nat(1, 2, 3)
//! sum(geometric(1/2))
//! add(r:0.(1), t:1)
//! normalize({1:2, 3:1})
//! ```
//!
//! Numbers are read in the instance named by the nearest enclosing `@`
//! tag: `nat` for the extended naturals, `real` (the default) for
//! `[0, inf]`. Moving a natural into `[0, inf]` needs an explicit
//! `real(...)`.

use std::fmt;

use infsum_core::extreal::{lower_real_sum, geometric_family, Dyadics, ExtNats, LowerReals};
use infsum_core::magnitude::{
    binary_expand, formal_normalize, formal_value, halve_lower, halving_lower, scalar_action_dyadic, tilde,
    FormalMagnitude, MagnitudeModule,
};
use infsum_core::paradoxical::{zp_add, zp_k, ZPElem};
use infsum_core::rig::{
    geometric_inverse, log_add, log_series_sum, omega_assoc_check, p_sum, LogElem, OrderPreservingMap, PMonoid,
};
use infsum_core::series::laws::CheckOutcome;
use infsum_core::series::DEFAULT_BUDGET;
use infsum_core::{ApproxLevel, Dyadic, DyadicExt, ExtNat, Family, LowerReal, SeriesMonoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct ExprError {
    pub pos: Pos,
    pub msg: String,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Num(String),
    Zp(String),
    Code(String),
    Punct(char),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().peekable(), pos: Pos { line: 1, col: 1 } }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, out: &mut String, pred: impl Fn(char) -> bool) {
        while let Some(&c) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, ExprError> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let start = self.pos;
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                self.take_while(&mut s, |c| c.is_ascii_digit() || c == '/' || c == '^');
                out.push((Tok::Num(s), start));
            } else if c == '{' {
                let mut s = String::new();
                self.take_while(&mut s, |c| c != '}');
                if self.bump() != Some('}') {
                    return err(start, "unclosed '{'");
                }
                s.push('}');
                out.push((Tok::Code(s), start));
            } else if c.is_alphabetic() || c == '_' || c == '∞' {
                let mut s = String::new();
                self.take_while(&mut s, |c| c.is_alphanumeric() || c == '_' || c == '∞');
                if (s == "t" || s == "r") && self.chars.peek() == Some(&':') {
                    s.push(':');
                    self.bump();
                    self.take_while(&mut s, |c| c == '0' || c == '1' || c == '.');
                    if s.starts_with('r') && self.chars.peek() == Some(&'(') {
                        self.take_while(&mut s, |c| c == '(' || c == '0' || c == '1');
                        if self.bump() != Some(')') {
                            return err(start, "unclosed period in nonterminating literal");
                        }
                        s.push(')');
                    }
                    out.push((Tok::Zp(s), start));
                } else {
                    out.push((Tok::Word(s), start));
                }
            } else if "()[],@".contains(c) {
                self.bump();
                out.push((Tok::Punct(c), start));
            } else {
                return err(start, format!("unexpected character {c:?}"));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(String),
    Word(String),
    Zp(String),
    Code(String),
    List(Vec<Expr>),
    Call { name: String, tag: Option<String>, args: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub node: Node,
    pub pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn list(&mut self, close: char) -> Result<Vec<Expr>, ExprError> {
        let mut items = Vec::new();
        if self.peek() == Some(&Tok::Punct(close)) {
            self.at += 1;
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            match self.peek() {
                Some(Tok::Punct(',')) => self.at += 1,
                Some(Tok::Punct(c)) if *c == close => {
                    self.at += 1;
                    return Ok(items);
                }
                _ => return err(self.pos(), format!("expected ',' or '{close}'")),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        let Some((tok, _)) = self.toks.get(self.at).cloned() else {
            return err(pos, "expected an expression");
        };
        self.at += 1;
        let node = match tok {
            Tok::Num(s) => Node::Num(s),
            Tok::Zp(s) => Node::Zp(s),
            Tok::Code(s) => Node::Code(s),
            Tok::Punct('[') => Node::List(self.list(']')?),
            Tok::Punct(c) => return err(pos, format!("unexpected '{c}'")),
            Tok::Word(name) => {
                let tag = if self.peek() == Some(&Tok::Punct('@')) {
                    self.at += 1;
                    match self.toks.get(self.at) {
                        Some((Tok::Word(t), _)) => {
                            self.at += 1;
                            Some(t.clone())
                        }
                        _ => return err(self.pos(), "expected an instance name after '@'"),
                    }
                } else {
                    None
                };
                if self.peek() == Some(&Tok::Punct('(')) {
                    self.at += 1;
                    Node::Call { name, tag, args: self.list(')')? }
                } else if tag.is_some() {
                    return err(self.pos(), "expected '(' after the instance tag");
                } else {
                    Node::Word(name)
                }
            }
        };
        Ok(Expr { node, pos })
    }
}

/// Parses a sequence of expressions.
pub fn parse(src: &str) -> Result<Vec<Expr>, ExprError> {
    let end_line = src.lines().count().max(1);
    let end_col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser { toks, at: 0, end: Pos { line: end_line, col: end_col } };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.expr()?);
    }
    Ok(out)
}

/// Where numbers are read and sums taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inst {
    Nat,
    Real,
}

#[derive(Clone, Debug)]
pub enum Value {
    Nat(ExtNat),
    Real(LowerReal),
    Zp(ZPElem),
    Formal(FormalMagnitude),
    List(Vec<Value>),
    /// `r, r^2, r^3, ...`.
    Geometric(Dyadic),
    Word(String),
    Text(String),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Nat(_) => "natural",
            Value::Real(_) => "real",
            Value::Zp(_) => "paradoxical real",
            Value::Formal(_) => "formal magnitude",
            Value::List(_) => "list",
            Value::Geometric(_) => "geometric family",
            Value::Word(_) => "word",
            Value::Text(_) => "text",
        }
    }

    /// The printed form at `level` bits.
    pub fn render(&self, level: ApproxLevel) -> String {
        match self {
            Value::Nat(n) => n.to_string(),
            Value::Real(r) => r.render(level),
            Value::Zp(z) => z.to_string(),
            Value::Formal(c) => c.to_string(),
            Value::List(items) => {
                let parts: Vec<String> = items.iter().map(|v| v.render(level)).collect();
                format!("[{}]", parts.join(", "))
            }
            Value::Geometric(r) => format!("geometric({r})"),
            Value::Word(w) | Value::Text(w) => w.clone(),
        }
    }
}

/// Evaluates `src` and renders one line per expression.
pub fn eval_source(src: &str, level: ApproxLevel) -> Result<Vec<String>, ExprError> {
    parse(src)?
        .iter()
        .map(|e| eval(e, Inst::Real).map(|v| v.render(level)))
        .collect()
}

fn arity(e: &Expr, name: &str, args: &[Expr], n: usize) -> Result<(), ExprError> {
    if args.len() == n {
        Ok(())
    } else {
        err(e.pos, format!("{name} takes {n} argument(s), got {}", args.len()))
    }
}

fn mismatch<T>(pos: Pos, want: &str, got: &Value) -> Result<T, ExprError> {
    err(pos, format!("expected {want}, got {}", got.kind()))
}

fn as_real(pos: Pos, v: Value) -> Result<LowerReal, ExprError> {
    match v {
        Value::Real(r) => Ok(r),
        Value::Nat(_) => err(pos, "expected real, got natural (convert with real(...))"),
        other => mismatch(pos, "real", &other),
    }
}

fn as_exact(pos: Pos, v: Value) -> Result<DyadicExt, ExprError> {
    let r = as_real(pos, v)?;
    match r.exact_value() {
        Some(d) => Ok(d.clone()),
        None => err(pos, "expected an exact dyadic"),
    }
}

fn as_nat(pos: Pos, v: Value) -> Result<ExtNat, ExprError> {
    match v {
        Value::Nat(n) => Ok(n),
        other => mismatch(pos, "natural", &other),
    }
}

/// The family given either as one list/family argument or as the
/// arguments themselves.
fn family_args(args: &[Expr], inst: Inst) -> Result<(Pos, Value), ExprError> {
    if let [one] = args {
        let v = eval(one, inst)?;
        if matches!(v, Value::List(_) | Value::Geometric(_)) {
            return Ok((one.pos, v));
        }
        return Ok((one.pos, Value::List(vec![v])));
    }
    let pos = args.first().map_or(Pos { line: 0, col: 0 }, |a| a.pos);
    let items = args.iter().map(|a| eval(a, inst)).collect::<Result<_, _>>()?;
    Ok((pos, Value::List(items)))
}

fn real_family(pos: Pos, fam: Value) -> Result<Family<LowerReal>, ExprError> {
    match fam {
        Value::Geometric(r) => Ok(geometric_family(r)),
        Value::List(items) => {
            let values = items.into_iter().map(|v| as_real(pos, v)).collect::<Result<_, _>>()?;
            Ok(LowerReals.family(values))
        }
        other => mismatch(pos, "a family", &other),
    }
}

fn nat_list(pos: Pos, fam: Value) -> Result<Vec<ExtNat>, ExprError> {
    match fam {
        Value::List(items) => items.into_iter().map(|v| as_nat(pos, v)).collect(),
        other => mismatch(pos, "a list of naturals", &other),
    }
}

/// Runs a computation on naturals in the exact dyadics, which do not
/// overflow, and brings the result back.
fn via_dyadics(pos: Pos, nats: &[ExtNat], f: impl FnOnce(Vec<DyadicExt>) -> DyadicExt) -> Result<ExtNat, ExprError> {
    let values = nats
        .iter()
        .map(|n| match n {
            ExtNat::Fin(k) => DyadicExt::from_u64(*k),
            ExtNat::Inf => DyadicExt::Inf,
        })
        .collect();
    match f(values) {
        DyadicExt::Inf => Ok(ExtNat::Inf),
        DyadicExt::Fin(d) => match d.to_u64() {
            Some(k) => Ok(ExtNat::Fin(k)),
            None => err(pos, format!("{d} does not fit in 64 bits")),
        },
    }
}

/// Exact dyadics when every entry is exact, lower reals otherwise.
fn exact_entries(fam: &Family<LowerReal>, len: usize) -> Option<Vec<DyadicExt>> {
    fam.support_bound()?;
    fam.prefix(len).iter().map(|r| r.exact_value().cloned()).collect()
}

pub fn eval(e: &Expr, inst: Inst) -> Result<Value, ExprError> {
    match &e.node {
        Node::Num(s) => match inst {
            Inst::Nat => s
                .parse::<ExtNat>()
                .map(Value::Nat)
                .or_else(|_| err(e.pos, format!("{s} is not a natural"))),
            Inst::Real => s
                .parse::<DyadicExt>()
                .map(|d| Value::Real(LowerReal::exact(d)))
                .or_else(|x| err(e.pos, x.to_string())),
        },
        Node::Word(w) if w == "inf" || w == "∞" => Ok(match inst {
            Inst::Nat => Value::Nat(ExtNat::Inf),
            Inst::Real => Value::Real(LowerReal::infinity()),
        }),
        Node::Word(w) => Ok(Value::Word(w.clone())),
        Node::Zp(s) => s.parse().map(Value::Zp).or_else(|x: infsum_core::ParseError| err(e.pos, x.to_string())),
        Node::Code(s) => s.parse().map(Value::Formal).or_else(|x: infsum_core::ParseError| err(e.pos, x.to_string())),
        Node::List(items) => Ok(Value::List(items.iter().map(|i| eval(i, inst)).collect::<Result<_, _>>()?)),
        Node::Call { name, tag, args } => {
            let inst = match tag.as_deref() {
                None => inst,
                Some("nat") => Inst::Nat,
                Some("real") => Inst::Real,
                Some(t) => return err(e.pos, format!("unknown instance {t:?} (known: nat, real)")),
            };
            call(e, name, args, inst)
        }
    }
}

fn call(e: &Expr, name: &str, args: &[Expr], inst: Inst) -> Result<Value, ExprError> {
    let arg = |i: usize| eval(&args[i], inst);
    let pos_of = |i: usize| args[i].pos;
    match name {
        "real" => {
            arity(e, name, args, 1)?;
            match eval(&args[0], Inst::Nat)? {
                Value::Nat(ExtNat::Fin(n)) => Ok(Value::Real(LowerReal::exact(DyadicExt::from_u64(n)))),
                Value::Nat(ExtNat::Inf) => Ok(Value::Real(LowerReal::infinity())),
                other => mismatch(pos_of(0), "natural", &other),
            }
        }
        "geometric" => {
            arity(e, name, args, 1)?;
            match eval(&args[0], Inst::Real).and_then(|v| as_exact(pos_of(0), v))? {
                DyadicExt::Fin(r) => Ok(Value::Geometric(r)),
                DyadicExt::Inf => err(pos_of(0), "geometric ratio must be finite"),
            }
        }
        "sum" => {
            let (pos, fam) = family_args(args, inst)?;
            match inst {
                Inst::Nat => {
                    let values = nat_list(pos, fam)?;
                    via_dyadics(e.pos, &values, |v| Dyadics.sum(&Dyadics.family(v))).map(Value::Nat)
                }
                Inst::Real => Ok(Value::Real(lower_real_sum(&real_family(pos, fam)?))),
            }
        }
        "add" => {
            arity(e, name, args, 2)?;
            match (arg(0)?, arg(1)?) {
                (Value::Nat(a), Value::Nat(b)) => via_dyadics(e.pos, &[a, b], |v| v[0].add(&v[1])).map(Value::Nat),
                (Value::Zp(a), Value::Zp(b)) => Ok(Value::Zp(zp_add(&a, &b))),
                (Value::Formal(a), Value::Formal(b)) => Ok(Value::Formal(a.add(&b))),
                (a, b) => Ok(Value::Real(as_real(pos_of(0), a)?.add(&as_real(pos_of(1), b)?))),
            }
        }
        "mul" => {
            arity(e, name, args, 2)?;
            match (arg(0)?, arg(1)?) {
                (Value::Nat(a), Value::Nat(b)) => via_dyadics(e.pos, &[a, b], |v| v[0].mul(&v[1])).map(Value::Nat),
                (a, b) => Ok(Value::Real(as_real(pos_of(0), a)?.mul(&as_real(pos_of(1), b)?))),
            }
        }
        "halve" => {
            arity(e, name, args, 1)?;
            match arg(0)? {
                Value::Formal(c) => Ok(Value::Formal(c.halve())),
                v => Ok(Value::Real(halve_lower(&as_real(pos_of(0), v)?))),
            }
        }
        "tilde" => {
            arity(e, name, args, 1)?;
            if inst == Inst::Nat {
                return err(e.pos, "N ∪ {inf} has no Zeno morphism to sum");
            }
            let a = as_real(pos_of(0), arg(0)?)?;
            Ok(Value::Real(tilde(&LowerReals, &halving_lower(), &a).value))
        }
        "action" => {
            arity(e, name, args, 2)?;
            let alpha = as_exact(pos_of(0), arg(0)?)?;
            let a = as_real(pos_of(1), arg(1)?)?;
            scalar_action_dyadic(&MagnitudeModule::extreal(), &alpha, &a)
                .map(Value::Real)
                .or_else(|x| err(e.pos, x.to_string()))
        }
        "P" => {
            let (pos, fam) = family_args(args, inst)?;
            match inst {
                Inst::Nat => {
                    let values = nat_list(pos, fam)?;
                    via_dyadics(e.pos, &values, |v| p_sum(&Dyadics, &Dyadics.family(v), DEFAULT_BUDGET).value)
                        .map(Value::Nat)
                }
                Inst::Real => {
                    let fam = real_family(pos, fam)?;
                    if let Some(exact) = exact_entries(&fam, DEFAULT_BUDGET) {
                        let v = p_sum(&Dyadics, &Dyadics.family(exact), DEFAULT_BUDGET).value;
                        return Ok(Value::Real(LowerReal::exact(v)));
                    }
                    Ok(Value::Real(p_sum(&LowerReals, &fam, DEFAULT_BUDGET).value))
                }
            }
        }
        "geominv" => {
            arity(e, name, args, 1)?;
            let a = as_exact(pos_of(0), arg(0)?)?;
            geometric_inverse(&a).map(Value::Real).or_else(|x| err(e.pos, x.to_string()))
        }
        "logadd" => {
            arity(e, name, args, 2)?;
            match (arg(0)?, arg(1)?) {
                (Value::Nat(a), Value::Nat(b)) => via_dyadics(e.pos, &[a, b], |v| {
                    log_add(&Dyadics, &LogElem::of(v[0].clone()), &LogElem::of(v[1].clone())).base().clone()
                })
                .map(Value::Nat),
                (a, b) => {
                    let (a, b) = (as_real(pos_of(0), a)?, as_real(pos_of(1), b)?);
                    Ok(Value::Real(log_add(&LowerReals, &LogElem::of(a), &LogElem::of(b)).base().clone()))
                }
            }
        }
        "logsum" => {
            let (pos, fam) = family_args(args, inst)?;
            let out = match inst {
                Inst::Nat => {
                    let nats = nat_list(pos, fam)?;
                    let mut failure = None;
                    let out = via_dyadics(e.pos, &nats, |v| {
                        let terms: Vec<_> = v.into_iter().map(LogElem::of).collect();
                        log_series_sum(&Dyadics, &terms).map(|l| l.base().clone()).unwrap_or_else(|x| {
                            failure = Some(x);
                            DyadicExt::zero()
                        })
                    })?;
                    match failure {
                        Some(x) => Err(x),
                        None => Ok(Value::Nat(out)),
                    }
                }
                Inst::Real => {
                    let Value::List(items) = fam else {
                        return err(pos, "logsum takes a finite list");
                    };
                    let terms = items
                        .into_iter()
                        .map(|v| as_real(pos, v).map(LogElem::of))
                        .collect::<Result<Vec<_>, _>>()?;
                    log_series_sum(&LowerReals, &terms).map(|l| Value::Real(l.base().clone()))
                }
            };
            out.or_else(|x| err(e.pos, x.to_string()))
        }
        "omegacheck" => omega(e, args, inst),
        "normalize" => {
            arity(e, name, args, 1)?;
            match arg(0)? {
                Value::Formal(c) => Ok(Value::Formal(formal_normalize(&c))),
                other => mismatch(pos_of(0), "formal magnitude", &other),
            }
        }
        "value" => {
            arity(e, name, args, 1)?;
            match arg(0)? {
                Value::Formal(c) => Ok(Value::Real(LowerReal::exact(formal_value(&c)))),
                Value::Zp(z) => Ok(Value::Text(z.value().to_string())),
                other => mismatch(pos_of(0), "formal magnitude or paradoxical real", &other),
            }
        }
        "k" => {
            arity(e, name, args, 1)?;
            match arg(0)? {
                Value::Zp(z) => zp_k(&z).map(Value::Zp).or_else(|x| err(pos_of(0), x.to_string())),
                other => mismatch(pos_of(0), "paradoxical real", &other),
            }
        }
        "expand" => {
            if args.is_empty() || args.len() > 2 {
                return err(e.pos, format!("expand takes 1 or 2 arguments, got {}", args.len()));
            }
            let x = as_exact(pos_of(0), eval(&args[0], Inst::Real)?)?;
            let nonterminating = match args.get(1).map(|a| eval(a, inst)).transpose()? {
                None => false,
                Some(Value::Word(w)) if w == "nonterminating" => true,
                Some(Value::Word(w)) if w == "terminating" => false,
                Some(other) => return mismatch(pos_of(1), "terminating or nonterminating", &other),
            };
            binary_expand(&x, nonterminating)
                .map(|b| Value::Text(b.to_string()))
                .or_else(|x| err(e.pos, x.to_string()))
        }
        _ => err(e.pos, format!("unknown operation {name:?}")),
    }
}

/// `omegacheck(family, fibres [, sum | P])`; fibre sizes are naturals, the
/// last may be `inf`.
fn omega(e: &Expr, args: &[Expr], inst: Inst) -> Result<Value, ExprError> {
    if args.len() < 2 || args.len() > 3 {
        return err(e.pos, format!("omegacheck takes 2 or 3 arguments, got {}", args.len()));
    }
    let fibres: Vec<Option<usize>> = nat_list(args[1].pos, eval(&args[1], Inst::Nat)?)?
        .into_iter()
        .map(|n| n.finite().map(|n| n as usize))
        .collect();
    let xi = OrderPreservingMap::new(&fibres).or_else(|x| err(args[1].pos, x.to_string()))?;
    let op = match args.get(2).map(|a| eval(a, inst)).transpose()? {
        None => "sum".to_string(),
        Some(Value::Word(w)) if w == "sum" || w == "P" => w,
        Some(other) => return mismatch(args[2].pos, "sum or P", &other),
    };
    let level = ApproxLevel(32);
    let fam = eval(&args[0], inst)?;
    let outcome = match (inst, op.as_str()) {
        (Inst::Nat, "sum") => {
            let values = nat_list(args[0].pos, fam)?;
            via_dyadics(args[0].pos, &values, |v| Dyadics.sum(&Dyadics.family(v)))?;
            omega_assoc_check(&ExtNats, &ExtNats.family(values), &xi, level)
        }
        (Inst::Nat, _) => {
            let values = nat_list(args[0].pos, fam)?;
            // every grouped product is bounded by the whole one
            via_dyadics(args[0].pos, &values, |v| p_sum(&Dyadics, &Dyadics.family(v), DEFAULT_BUDGET).value)?;
            let p = PMonoid::new(ExtNats);
            omega_assoc_check(&p, &p.family(values), &xi, level)
        }
        (Inst::Real, "sum") => omega_assoc_check(&LowerReals, &real_family(args[0].pos, fam)?, &xi, level),
        (Inst::Real, _) => {
            let p = PMonoid::new(LowerReals);
            let fam = real_family(args[0].pos, fam)?;
            omega_assoc_check(&p, &fam, &xi, level)
        }
    };
    Ok(Value::Text(match outcome {
        CheckOutcome::Pass => "pass".into(),
        CheckOutcome::Fail(m) => format!("fail: {m}"),
        CheckOutcome::Inconclusive(m) => format!("inconclusive: {m}"),
        CheckOutcome::Invalid(m) => format!("invalid: {m}"),
    }))
}
