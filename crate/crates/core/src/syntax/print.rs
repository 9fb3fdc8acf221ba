//! Printing in the theory DSL. Output re-parses to the same value.

use std::fmt::{self, Write};

use super::{Axiom, AxiomBody, Formula, Term, Theory};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&v.name),
            Term::App { symbol, args } if args.is_empty() => f.write_str(symbol),
            Term::App { symbol, args } => {
                write!(f, "{symbol}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;

#[allow(clippy::too_many_arguments)]
fn write_binary(
    out: &mut impl Write,
    a: &Formula,
    b: &Formula,
    op: &str,
    level: u8,
    own: u8,
    left: u8,
    right: u8,
) -> fmt::Result {
    let open = level > own;
    if open {
        out.write_char('(')?;
    }
    write_formula(out, a, left)?;
    write!(out, " {op} ")?;
    write_formula(out, b, right)?;
    if open {
        out.write_char(')')?;
    }
    Ok(())
}

fn write_formula(out: &mut impl Write, phi: &Formula, level: u8) -> fmt::Result {
    match phi {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Prop(p) => out.write_str(p),
        Formula::Eq(a, b) => write!(out, "{a} = {b}"),
        Formula::Neq(a, b) => write!(out, "{a} != {b}"),
        Formula::Pred(p, args) => {
            if args.is_empty() {
                out.write_str(p)
            } else {
                write!(out, "{}", Term::app(p.clone(), args.clone()))
            }
        }
        Formula::And(a, b) => write_binary(out, a, b, "&", level, AND, AND, NOT),
        Formula::Or(a, b) => write_binary(out, a, b, "|", level, OR, OR, AND),
        Formula::Implies(a, b) => write_binary(out, a, b, "->", level, IMPLIES, OR, IMPLIES),
        Formula::Not(a) => {
            out.write_char('~')?;
            write_formula(out, a, NOT)
        }
        Formula::Exists(v, body) => {
            let open = level > 0;
            if open {
                out.write_char('(')?;
            }
            write!(out, "exists {}:{}. ", v.name, v.sort)?;
            write_formula(out, body, 0)?;
            if open {
                out.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            AxiomBody::Formula(phi) => write!(f, "{phi}"),
            AxiomBody::Sequent {
                premise,
                conclusion,
            } => write!(f, "{premise} |- {conclusion}"),
        }
    }
}

pub(super) fn axiom_to_string(a: &Axiom) -> String {
    a.to_string()
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = &self.signature;
        writeln!(f, "theory {}", self.name)?;
        if !sig.sorts.is_empty() {
            writeln!(f, "  sort {}", sig.sorts.join(" "))?;
        }
        if !sig.propositions.is_empty() {
            writeln!(f, "  prop {}", sig.propositions.join(" "))?;
        }
        for op in &sig.functions {
            write!(f, "  op {} :", op.name)?;
            for a in &op.args {
                write!(f, " {a}")?;
            }
            writeln!(f, " -> {}", op.result)?;
        }
        for p in &sig.predicates {
            write!(f, "  pred {} :", p.name)?;
            for a in &p.args {
                write!(f, " {a}")?;
            }
            writeln!(f)?;
        }
        for ax in &self.axioms {
            writeln!(f, "  axiom {ax}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn precedence_is_minimal() {
        let p = || Formula::prop("p");
        let q = || Formula::prop("q");
        let f = Formula::implies(Formula::and(p(), Formula::not(q())), Formula::or(p(), q()));
        assert_eq!(f.to_string(), "p & ~q -> p | q");
        let g = Formula::and(p(), Formula::and(q(), p()));
        assert_eq!(g.to_string(), "p & (q & p)");
        let h = Formula::implies(Formula::implies(p(), q()), p());
        assert_eq!(h.to_string(), "(p -> q) -> p");
    }

    #[test]
    fn nested_exists_keeps_parentheses() {
        let x = Variable::new("x", "S");
        let inner = Formula::exists(x.clone(), Formula::Eq(Term::Var(x.clone()), Term::Var(x)));
        let f = Formula::and(inner, Formula::True);
        assert_eq!(f.to_string(), "(exists x:S. x = x) & true");
    }
}
