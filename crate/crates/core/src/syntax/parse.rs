//! Parser for the theory DSL.
//!
//! ```text
//! theory    := "theory" IDENT decl* ;
//! decl      := "sort" IDENT+ | "prop" IDENT+
//!            | "op" IDENT ":" IDENT* "->" IDENT
//!            | "pred" IDENT ":" IDENT*
//!            | "axiom" formula | "axiom" formula "|-" formula ;
//! formula   := "true" | "false" | IDENT args? | term "=" term | term "!=" term
//!            | formula ("&"|"|"|"->") formula | "~" formula
//!            | "exists" IDENT ":" IDENT "." formula | "(" formula ")" ;
//! term      := IDENT | IDENT "(" term ("," term)* ")" ;
//! ```
//!
//! `~` binds tightest, then `&`, `|`, and `->` (right associative). The body
//! of `exists` extends as far right as possible. Undeclared identifiers of
//! the form `[a-z][0-9']*` are variables whose sorts are inferred per axiom.

use std::collections::HashMap;

use super::{check_formula, Axiom, Formula, Signature, Symbol, Term, Theory, Variable};
use crate::error::{Error, Location, ParseError};

type PResult<T> = Result<T, ParseError>;

const KEYWORDS: &[&str] = &[
    "theory", "sort", "prop", "op", "pred", "axiom", "true", "false", "exists",
];
const DECL_KEYWORDS: &[&str] = &["sort", "prop", "op", "pred", "axiom"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Arrow,
    Turnstile,
    Eq,
    Neq,
    And,
    Or,
    Not,
    LParen,
    RParen,
    Comma,
    Dot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Not => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn err(location: Location, error: Error) -> ParseError {
    ParseError { location, error }
}

fn syntax(location: Location, expected: &[&str], found: String) -> ParseError {
    err(
        location,
        Error::Syntax {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        },
    )
}

fn tokenize(text: &str) -> PResult<Vec<(Tok, Location)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let loc = Location { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    bump!();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), loc));
            continue;
        }
        bump!();
        let tok = match c {
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '&' => Tok::And,
            '~' => Tok::Not,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '-' if chars.peek() == Some(&'>') => {
                bump!();
                Tok::Arrow
            }
            '|' if chars.peek() == Some(&'-') => {
                bump!();
                Tok::Turnstile
            }
            '|' => Tok::Or,
            '!' if chars.peek() == Some(&'=') => {
                bump!();
                Tok::Neq
            }
            other => return Err(syntax(loc, &["token"], format!("`{other}`"))),
        };
        out.push((tok, loc));
    }
    out.push((Tok::Eof, Location { line, column }));
    Ok(out)
}

pub(crate) fn is_variable_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_digit() || c == '\'')
}

#[derive(Debug)]
struct RawTerm {
    name: String,
    args: Option<Vec<RawTerm>>,
    loc: Location,
}

#[derive(Debug)]
enum RawFormula {
    True,
    False,
    Atom(RawTerm),
    Eq(RawTerm, RawTerm, Location),
    Neq(RawTerm, RawTerm, Location),
    And(Box<RawFormula>, Box<RawFormula>),
    Or(Box<RawFormula>, Box<RawFormula>),
    Implies(Box<RawFormula>, Box<RawFormula>),
    Not(Box<RawFormula>),
    Exists(String, String, Location, Box<RawFormula>),
}

struct Parser {
    tokens: Vec<(Tok, Location)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn loc(&self) -> Location {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Location) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn at_decl_boundary(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => DECL_KEYWORDS.contains(&s.as_str()),
            Tok::Eof => true,
            _ => false,
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Location> {
        if *self.peek() == tok {
            Ok(self.advance().1)
        } else {
            Err(syntax(self.loc(), &[&tok.describe()], self.peek().describe()))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.advance();
            Ok(())
        } else {
            Err(syntax(self.loc(), &[&format!("`{kw}`")], self.peek().describe()))
        }
    }

    /// A name that is not a keyword.
    fn name(&mut self) -> PResult<(String, Location)> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let loc = self.advance().1;
                Ok((s, loc))
            }
            other => Err(syntax(self.loc(), &["identifier"], other.describe())),
        }
    }

    fn names_until_boundary(&mut self, stop: Option<Tok>) -> Vec<(String, Location)> {
        let mut out = Vec::new();
        while let Tok::Ident(s) = self.peek().clone() {
            if KEYWORDS.contains(&s.as_str()) || stop.as_ref() == Some(self.peek()) {
                break;
            }
            let loc = self.advance().1;
            out.push((s, loc));
        }
        out
    }

    fn implication(&mut self, sig: &Signature) -> PResult<RawFormula> {
        let lhs = self.disjunction(sig)?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.implication(sig)?;
            return Ok(RawFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, sig: &Signature) -> PResult<RawFormula> {
        let mut lhs = self.conjunction(sig)?;
        while *self.peek() == Tok::Or {
            self.advance();
            let rhs = self.conjunction(sig)?;
            lhs = RawFormula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self, sig: &Signature) -> PResult<RawFormula> {
        let mut lhs = self.unary(sig)?;
        while *self.peek() == Tok::And {
            self.advance();
            let rhs = self.unary(sig)?;
            lhs = RawFormula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self, sig: &Signature) -> PResult<RawFormula> {
        if *self.peek() == Tok::Not {
            self.advance();
            return Ok(RawFormula::Not(Box::new(self.unary(sig)?)));
        }
        if self.is_keyword("exists") {
            self.advance();
            let (var, loc) = self.name()?;
            if !is_variable_name(&var) || sig.lookup(&var).is_some() {
                return Err(syntax(loc, &["variable"], format!("`{var}`")));
            }
            self.expect(Tok::Colon)?;
            let (sort, _) = self.name()?;
            self.expect(Tok::Dot)?;
            let body = self.implication(sig)?;
            return Ok(RawFormula::Exists(var, sort, loc, Box::new(body)));
        }
        self.atom(sig)
    }

    fn atom(&mut self, sig: &Signature) -> PResult<RawFormula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.advance();
                let f = self.implication(sig)?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "true" => {
                self.advance();
                Ok(RawFormula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.advance();
                Ok(RawFormula::False)
            }
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                if matches!(
                    sig.lookup(&s),
                    Some(Symbol::Predicate(_)) | Some(Symbol::Proposition(_))
                ) {
                    return Ok(RawFormula::Atom(self.term()?));
                }
                let lhs = self.term()?;
                let loc = self.loc();
                match self.peek() {
                    Tok::Eq => {
                        self.advance();
                        Ok(RawFormula::Eq(lhs, self.term()?, loc))
                    }
                    Tok::Neq => {
                        self.advance();
                        Ok(RawFormula::Neq(lhs, self.term()?, loc))
                    }
                    other => Err(syntax(loc, &["`=`", "`!=`"], other.describe())),
                }
            }
            other => Err(syntax(self.loc(), &["formula"], other.describe())),
        }
    }

    fn term(&mut self) -> PResult<RawTerm> {
        let (name, loc) = self.name()?;
        let args = if *self.peek() == Tok::LParen {
            self.advance();
            let mut args = Vec::new();
            if *self.peek() != Tok::RParen {
                args.push(self.term()?);
                while *self.peek() == Tok::Comma {
                    self.advance();
                    args.push(self.term()?);
                }
            }
            self.expect(Tok::RParen)?;
            Some(args)
        } else {
            None
        };
        Ok(RawTerm { name, args, loc })
    }
}

#[derive(Debug, Clone)]
enum Ty {
    Known(String),
    Slot(usize),
}

/// Sort inference for the free variables of one axiom.
struct Inference<'s> {
    sig: &'s Signature,
    slots: HashMap<String, usize>,
    first_seen: Vec<(String, Location)>,
    parent: Vec<usize>,
    sort: Vec<Option<String>>,
}

impl<'s> Inference<'s> {
    fn new(sig: &'s Signature) -> Self {
        Inference {
            sig,
            slots: HashMap::new(),
            first_seen: Vec::new(),
            parent: Vec::new(),
            sort: Vec::new(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn slot(&mut self, name: &str, loc: Location) -> usize {
        if let Some(&i) = self.slots.get(name) {
            return i;
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.sort.push(None);
        self.slots.insert(name.to_string(), i);
        self.first_seen.push((name.to_string(), loc));
        i
    }

    fn unify(&mut self, a: &Ty, b: &Ty, loc: Location) -> PResult<()> {
        let mismatch = |x: &str, y: &str| {
            err(
                loc,
                Error::SortMismatch(format!("expected sort `{y}`, found `{x}`")),
            )
        };
        match (a, b) {
            (Ty::Known(x), Ty::Known(y)) => {
                if x != y {
                    return Err(mismatch(x, y));
                }
            }
            (Ty::Slot(i), Ty::Known(s)) | (Ty::Known(s), Ty::Slot(i)) => {
                let r = self.find(*i);
                match &self.sort[r] {
                    Some(have) if have != s => return Err(mismatch(have, s)),
                    Some(_) => {}
                    None => self.sort[r] = Some(s.clone()),
                }
            }
            (Ty::Slot(i), Ty::Slot(j)) => {
                let (ri, rj) = (self.find(*i), self.find(*j));
                if ri != rj {
                    match (self.sort[ri].clone(), self.sort[rj].clone()) {
                        (Some(x), Some(y)) if x != y => return Err(mismatch(&x, &y)),
                        (None, Some(y)) => self.sort[ri] = Some(y),
                        _ => {}
                    }
                    self.parent[rj] = ri;
                }
            }
        }
        Ok(())
    }

    fn term(&mut self, t: &RawTerm, scope: &[(String, String)]) -> PResult<Ty> {
        match self.sig.lookup(&t.name) {
            Some(Symbol::Function(i)) => {
                let f = &self.sig.functions()[i];
                let args = t.args.as_deref().unwrap_or(&[]);
                if args.len() != f.arity() {
                    return Err(err(
                        t.loc,
                        Error::ArityMismatch {
                            symbol: t.name.clone(),
                            expected: f.arity(),
                            got: args.len(),
                        },
                    ));
                }
                let arg_sorts = f.args.clone();
                let result = f.result.clone();
                for (arg, s) in args.iter().zip(arg_sorts) {
                    let ty = self.term(arg, scope)?;
                    self.unify(&ty, &Ty::Known(s), arg.loc)?;
                }
                Ok(Ty::Known(result))
            }
            Some(_) => Err(syntax(t.loc, &["term"], format!("`{}`", t.name))),
            None if is_variable_name(&t.name) => {
                if t.args.is_some() {
                    return Err(err(t.loc, Error::UnknownSymbol(t.name.clone())));
                }
                if let Some((_, s)) = scope.iter().rev().find(|(n, _)| *n == t.name) {
                    return Ok(Ty::Known(s.clone()));
                }
                Ok(Ty::Slot(self.slot(&t.name, t.loc)))
            }
            None => Err(err(t.loc, Error::UnknownSymbol(t.name.clone()))),
        }
    }

    fn formula(&mut self, f: &RawFormula, scope: &mut Vec<(String, String)>) -> PResult<()> {
        match f {
            RawFormula::True | RawFormula::False => Ok(()),
            RawFormula::Atom(t) => {
                let args = t.args.as_deref().unwrap_or(&[]);
                match self.sig.lookup(&t.name) {
                    Some(Symbol::Proposition(_)) => {
                        if !args.is_empty() {
                            return Err(err(
                                t.loc,
                                Error::ArityMismatch {
                                    symbol: t.name.clone(),
                                    expected: 0,
                                    got: args.len(),
                                },
                            ));
                        }
                        Ok(())
                    }
                    Some(Symbol::Predicate(i)) => {
                        let p = &self.sig.predicates()[i];
                        if args.len() != p.arity() {
                            return Err(err(
                                t.loc,
                                Error::ArityMismatch {
                                    symbol: t.name.clone(),
                                    expected: p.arity(),
                                    got: args.len(),
                                },
                            ));
                        }
                        let sorts = p.args.clone();
                        for (arg, s) in args.iter().zip(sorts) {
                            let ty = self.term(arg, scope)?;
                            self.unify(&ty, &Ty::Known(s), arg.loc)?;
                        }
                        Ok(())
                    }
                    _ => unreachable!("atoms are only built from predicates and propositions"),
                }
            }
            RawFormula::Eq(a, b, loc) | RawFormula::Neq(a, b, loc) => {
                let ta = self.term(a, scope)?;
                let tb = self.term(b, scope)?;
                self.unify(&ta, &tb, *loc)
            }
            RawFormula::And(a, b) | RawFormula::Or(a, b) | RawFormula::Implies(a, b) => {
                self.formula(a, scope)?;
                self.formula(b, scope)
            }
            RawFormula::Not(a) => self.formula(a, scope),
            RawFormula::Exists(v, s, loc, body) => {
                if self.sig.sort_index(s).is_none() {
                    return Err(err(
                        *loc,
                        Error::SortMismatch(format!("sort `{s}` is not declared")),
                    ));
                }
                scope.push((v.clone(), s.clone()));
                let r = self.formula(body, scope);
                scope.pop();
                r
            }
        }
    }

    /// Resolved sorts of the free variables; a lone sort is the default.
    fn resolve(mut self) -> PResult<HashMap<String, String>> {
        let single = match self.sig.sorts() {
            [only] => Some(only.clone()),
            _ => None,
        };
        let mut out = HashMap::new();
        for (name, loc) in self.first_seen.clone() {
            let i = self.slots[&name];
            let r = self.find(i);
            let sort = self.sort[r].clone().or_else(|| single.clone()).ok_or_else(|| {
                err(
                    loc,
                    Error::SortMismatch(format!("cannot infer the sort of variable `{name}`")),
                )
            })?;
            out.insert(name, sort);
        }
        Ok(out)
    }
}

fn build_term(t: &RawTerm, scope: &[(String, String)], free: &HashMap<String, String>) -> Term {
    match &t.args {
        Some(args) => Term::app(
            t.name.clone(),
            args.iter().map(|a| build_term(a, scope, free)).collect(),
        ),
        None => {
            if let Some((_, s)) = scope.iter().rev().find(|(n, _)| *n == t.name) {
                Term::var(t.name.clone(), s.clone())
            } else if let Some(s) = free.get(&t.name) {
                Term::var(t.name.clone(), s.clone())
            } else {
                Term::constant(t.name.clone())
            }
        }
    }
}

fn build_formula(
    f: &RawFormula,
    sig: &Signature,
    scope: &mut Vec<(String, String)>,
    free: &HashMap<String, String>,
) -> Formula {
    match f {
        RawFormula::True => Formula::True,
        RawFormula::False => Formula::False,
        RawFormula::Atom(t) => match sig.lookup(&t.name) {
            Some(Symbol::Proposition(_)) => Formula::Prop(t.name.clone()),
            _ => Formula::Pred(
                t.name.clone(),
                t.args
                    .iter()
                    .flatten()
                    .map(|a| build_term(a, scope, free))
                    .collect(),
            ),
        },
        RawFormula::Eq(a, b, _) => {
            Formula::Eq(build_term(a, scope, free), build_term(b, scope, free))
        }
        RawFormula::Neq(a, b, _) => {
            Formula::Neq(build_term(a, scope, free), build_term(b, scope, free))
        }
        RawFormula::And(a, b) => Formula::and(
            build_formula(a, sig, scope, free),
            build_formula(b, sig, scope, free),
        ),
        RawFormula::Or(a, b) => Formula::or(
            build_formula(a, sig, scope, free),
            build_formula(b, sig, scope, free),
        ),
        RawFormula::Implies(a, b) => Formula::implies(
            build_formula(a, sig, scope, free),
            build_formula(b, sig, scope, free),
        ),
        RawFormula::Not(a) => Formula::not(build_formula(a, sig, scope, free)),
        RawFormula::Exists(v, s, _, body) => {
            scope.push((v.clone(), s.clone()));
            let body = build_formula(body, sig, scope, free);
            scope.pop();
            Formula::exists(Variable::new(v.clone(), s.clone()), body)
        }
    }
}

fn elaborate_axiom(
    sig: &Signature,
    premise: &RawFormula,
    conclusion: Option<&RawFormula>,
) -> PResult<Axiom> {
    let mut inf = Inference::new(sig);
    inf.formula(premise, &mut Vec::new())?;
    if let Some(c) = conclusion {
        inf.formula(c, &mut Vec::new())?;
    }
    let free = inf.resolve()?;
    let p = build_formula(premise, sig, &mut Vec::new(), &free);
    Ok(match conclusion {
        None => Axiom::formula(p),
        Some(c) => Axiom::sequent(p, build_formula(c, sig, &mut Vec::new(), &free)),
    })
}

/// Parses a single term whose variables must all come from `context`.
pub fn parse_term(signature: &Signature, text: &str, context: &[Variable]) -> Result<Term, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let raw = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.loc(), &["end of input"], p.peek().describe()));
    }
    fn free_check(t: &RawTerm, sig: &Signature, context: &[Variable]) -> PResult<()> {
        if sig.lookup(&t.name).is_none() && !context.iter().any(|v| v.name == t.name) {
            return Err(err(t.loc, Error::UnknownSymbol(t.name.clone())));
        }
        t.args.iter().flatten().try_for_each(|a| free_check(a, sig, context))
    }
    free_check(&raw, signature, context)?;
    let scope: Vec<(String, String)> = context
        .iter()
        .map(|v| (v.name.clone(), v.sort.clone()))
        .collect();
    let mut inf = Inference::new(signature);
    inf.term(&raw, &scope)?;
    Ok(build_term(&raw, &scope, &HashMap::new()))
}

/// Parses a closed formula over `signature`.
pub fn parse_sentence(signature: &Signature, text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let start = p.loc();
    let raw = p.implication(signature)?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.loc(), &["end of input"], p.peek().describe()));
    }
    let mut inf = Inference::new(signature);
    inf.formula(&raw, &mut Vec::new())?;
    let free = inf.resolve()?;
    if let Some(name) = free.keys().min() {
        return Err(err(
            start,
            Error::SortMismatch(format!("free variable `{name}` in a sentence")),
        ));
    }
    let f = build_formula(&raw, signature, &mut Vec::new(), &free);
    check_formula(signature, &f, &[]).map_err(|e| err(start, e))?;
    Ok(f)
}

/// Parses and validates a theory.
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let start = p.loc();
    p.expect_keyword("theory")?;
    let (name, _) = p.name()?;
    let mut sig = Signature::new();
    let mut axioms = Vec::new();
    let mut axiom_locs = Vec::new();
    let at = |loc: Location| move |e: Error| err(loc, e);

    loop {
        let loc = p.loc();
        match p.peek().clone() {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "sort" || kw == "prop" => {
                p.advance();
                let names = p.names_until_boundary(None);
                if names.is_empty() {
                    return Err(syntax(p.loc(), &["identifier"], p.peek().describe()));
                }
                for (n, nloc) in names {
                    if kw == "sort" {
                        sig.add_sort(&n).map_err(at(nloc))?;
                    } else {
                        sig.add_proposition(&n).map_err(at(nloc))?;
                    }
                }
            }
            Tok::Ident(kw) if kw == "op" => {
                p.advance();
                let (n, nloc) = p.name()?;
                p.expect(Tok::Colon)?;
                let args = p.names_until_boundary(None);
                p.expect(Tok::Arrow)?;
                let (result, rloc) = p.name()?;
                for (a, aloc) in &args {
                    if sig.sort_index(a).is_none() {
                        return Err(err(
                            *aloc,
                            Error::SortMismatch(format!("sort `{a}` is not declared")),
                        ));
                    }
                }
                if sig.sort_index(&result).is_none() {
                    return Err(err(
                        rloc,
                        Error::SortMismatch(format!("sort `{result}` is not declared")),
                    ));
                }
                let args: Vec<&str> = args.iter().map(|(a, _)| a.as_str()).collect();
                sig.add_function(&n, &args, &result).map_err(at(nloc))?;
            }
            Tok::Ident(kw) if kw == "pred" => {
                p.advance();
                let (n, nloc) = p.name()?;
                p.expect(Tok::Colon)?;
                let args = p.names_until_boundary(None);
                for (a, aloc) in &args {
                    if sig.sort_index(a).is_none() {
                        return Err(err(
                            *aloc,
                            Error::SortMismatch(format!("sort `{a}` is not declared")),
                        ));
                    }
                }
                let args: Vec<&str> = args.iter().map(|(a, _)| a.as_str()).collect();
                sig.add_predicate(&n, &args).map_err(at(nloc))?;
            }
            Tok::Ident(kw) if kw == "axiom" => {
                p.advance();
                let premise = p.implication(&sig)?;
                let conclusion = if *p.peek() == Tok::Turnstile {
                    p.advance();
                    Some(p.implication(&sig)?)
                } else {
                    None
                };
                if !p.at_decl_boundary() {
                    return Err(syntax(
                        p.loc(),
                        &["`&`", "`|`", "`->`", "`|-`", "declaration"],
                        p.peek().describe(),
                    ));
                }
                axioms.push(elaborate_axiom(&sig, &premise, conclusion.as_ref())?);
                axiom_locs.push(loc);
            }
            other => {
                return Err(syntax(
                    loc,
                    &["`sort`", "`prop`", "`op`", "`pred`", "`axiom`"],
                    other.describe(),
                ))
            }
        }
    }

    Theory::new(name, sig, axioms.clone()).map_err(|e| {
        let loc = axioms
            .iter()
            .position(|a| !super::Fragment::ALL.iter().any(|fr| a.belongs_to(*fr)))
            .map(|i| axiom_locs[i])
            .unwrap_or(start);
        err(loc, e)
    })
}
