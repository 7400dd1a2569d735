use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{Formula, SoVar, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrintOptions {
    /// Use the ASCII spellings (`forall`, `~`, `&`, `->`, ...).
    pub ascii: bool,
    /// Print the primitive form instead of the stored sugar.
    pub expand_sugar: bool,
}

pub fn print(f: &Formula) -> String {
    print_with(f, PrintOptions::default())
}

pub fn print_with(f: &Formula, opts: PrintOptions) -> String {
    let mut p = Printer {
        out: String::new(),
        ascii: opts.ascii,
        so_scope: Vec::new(),
    };
    if opts.expand_sugar {
        p.formula(&f.normalize());
    } else {
        p.formula(f);
    }
    p.out
}

struct Printer {
    out: String,
    ascii: bool,
    so_scope: Vec<SoVar>,
}

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

/// A quantifier, possibly under negations, swallows everything to its right.
fn opens_scope(f: &Formula) -> bool {
    match f {
        Formula::Not(a) => opens_scope(a),
        Formula::Forall(..) | Formula::Exists(..) | Formula::ForallSo(..) | Formula::ExistsSo(..) => {
            true
        }
        _ => false,
    }
}

impl Printer {
    fn sym<'a>(&self, unicode: &'a str, ascii: &'a str) -> &'a str {
        if self.ascii {
            ascii
        } else {
            unicode
        }
    }

    /// A caret-less occurrence resolves to the innermost binder with the
    /// same index, so the arity is spelled out whenever that would mislead.
    fn so_name(&self, v: SoVar, binder: bool) -> String {
        let shadowed = !binder
            && self
                .so_scope
                .iter()
                .rev()
                .find(|w| w.index == v.index)
                .is_some_and(|w| w.arity != v.arity);
        if v.arity != 1 || shadowed {
            alloc::format!("X{}^{}", v.index, v.arity)
        } else {
            alloc::format!("X{}", v.index)
        }
    }

    fn so_var(&mut self, v: SoVar) {
        let name = self.so_name(v, false);
        self.out.push_str(&name);
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(v) => {
                let _ = write!(self.out, "x{}", v.0);
            }
            Term::Const(c) => {
                let _ = write!(self.out, "c{c}");
            }
            Term::App(fi, args) => {
                let _ = write!(self.out, "f{fi}");
                if !args.is_empty() {
                    self.args(args);
                }
            }
        }
    }

    fn args(&mut self, args: &[Term]) {
        self.out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                self.out.push_str(", ");
            }
            self.term(a);
        }
        self.out.push(')');
    }

    fn child(&mut self, f: &Formula, min: u8) {
        if precedence(f) < min || opens_scope(f) {
            self.out.push('(');
            self.formula(f);
            self.out.push(')');
        } else {
            self.formula(f);
        }
    }

    fn binary(&mut self, a: &Formula, b: &Formula, op: &str, left: u8, right: u8) {
        self.child(a, left);
        self.out.push(' ');
        self.out.push_str(op);
        self.out.push(' ');
        self.child(b, right);
    }

    fn quantifier(&mut self, q: &str, body: &Formula) {
        self.out.push_str(q);
        self.out.push(' ');
        if precedence(body) < UNARY {
            self.out.push('(');
            self.formula(body);
            self.out.push(')');
        } else {
            self.formula(body);
        }
    }

    fn formula(&mut self, f: &Formula) {
        use Formula::*;
        match f {
            Pred(p, args) => {
                let _ = write!(self.out, "P{p}");
                self.args(args);
            }
            Eq(a, b) => {
                self.term(a);
                self.out.push_str(" = ");
                self.term(b);
            }
            Apply(v, args) => {
                self.so_var(*v);
                self.args(args);
            }
            SoEq(a, b) => {
                self.so_var(*a);
                self.out.push_str(" = ");
                self.so_var(*b);
            }
            Not(inner) => match inner.as_ref() {
                Eq(a, b) => {
                    self.term(a);
                    let op = self.sym(" ≠ ", " != ");
                    self.out.push_str(op);
                    self.term(b);
                }
                SoEq(a, b) => {
                    self.so_var(*a);
                    let op = self.sym(" ≠ ", " != ");
                    self.out.push_str(op);
                    self.so_var(*b);
                }
                other => {
                    let op = self.sym("¬", "~");
                    self.out.push_str(op);
                    if precedence(other) < UNARY {
                        self.out.push('(');
                        self.formula(other);
                        self.out.push(')');
                    } else {
                        self.formula(other);
                    }
                }
            },
            And(a, b) => {
                let op = self.sym("∧", "&");
                self.binary(a, b, op, AND, UNARY);
            }
            Or(a, b) => {
                let op = self.sym("∨", "|");
                self.binary(a, b, op, OR, AND);
            }
            Implies(a, b) => {
                let op = self.sym("→", "->");
                self.binary(a, b, op, OR, IMP);
            }
            Iff(a, b) => {
                let op = self.sym("↔", "<->");
                self.binary(a, b, op, IMP, IFF);
            }
            Forall(v, body) | Exists(v, body) => {
                let q = match (f, self.ascii) {
                    (Forall(..), false) => "∀",
                    (Forall(..), true) => "forall ",
                    (_, false) => "∃",
                    (_, true) => "exists ",
                };
                let head = alloc::format!("{q}x{}", v.0);
                self.quantifier(&head, body);
            }
            ForallSo(v, body) | ExistsSo(v, body) => {
                let q = match (f, self.ascii) {
                    (ForallSo(..), false) => "∀",
                    (ForallSo(..), true) => "forall ",
                    (_, false) => "∃",
                    (_, true) => "exists ",
                };
                let head = alloc::format!("{q}{}", self.so_name(*v, true));
                self.so_scope.push(*v);
                self.quantifier(&head, body);
                self.so_scope.pop();
            }
            Inst(v, body) => {
                self.out.push('[');
                self.so_var(*v);
                let theta = self.sym(" := θ_n](", " := theta_n](");
                self.out.push_str(theta);
                self.so_scope.push(*v);
                self.formula(body);
                self.so_scope.pop();
                self.out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{alpha_eq, parse, parse_schematic, Signature};

    fn sig() -> Signature {
        "P0/1,P1/2,f0/1,c0".parse().unwrap()
    }

    fn round_trip(s: &str) {
        let f = parse_schematic(s, &sig()).unwrap();
        for ascii in [false, true] {
            for expand_sugar in [false, true] {
                let opts = PrintOptions { ascii, expand_sugar };
                let text = print_with(&f, opts);
                let g = parse_schematic(&text, &sig()).unwrap();
                let want = if expand_sugar { f.normalize() } else { f.clone() };
                assert!(alpha_eq(&g, &want), "{s} printed as {text}");
            }
        }
    }

    #[test]
    fn negated_conjunction() {
        let f = parse("¬(P0(x0) ∧ P0(x1))", &sig()).unwrap();
        assert_eq!(print(&f), "¬(P0(x0) ∧ P0(x1))");
        assert_eq!(parse(&print(&f), &sig()).unwrap(), f);
    }

    #[test]
    fn quantifier_chain() {
        let f = parse("∀x0 ∀x1 ∀x2 (P1(x0, x1) ∧ P0(x2))", &sig()).unwrap();
        assert_eq!(print(&f), "∀x0 ∀x1 ∀x2 (P1(x0, x1) ∧ P0(x2))");
        assert_eq!(parse(&print(&f), &sig()).unwrap(), f);
    }

    #[test]
    fn sugar_flag() {
        let f = parse("∃X0 X0(x0)", &sig()).unwrap();
        assert_eq!(print(&f), "∃X0 X0(x0)");
        let opts = PrintOptions {
            ascii: false,
            expand_sugar: true,
        };
        assert_eq!(print_with(&f, opts), "¬∀X0 ¬X0(x0)");
        round_trip("∃X0 X0(x0)");
    }

    #[test]
    fn tricky_shapes() {
        for s in [
            "(∀x0 P0(x0)) ∧ P0(x1)",
            "(¬∃x0 P0(x0)) → P0(c0)",
            "P0(x0) → P0(x1) → P0(x2)",
            "(P0(x0) → P0(x1)) → P0(x2)",
            "P0(x0) ↔ P0(x1) ↔ P0(x2)",
            "(P0(x0) ∨ P0(x1)) ∧ ¬(P0(x2) ∨ x0 ≠ f0(c0))",
            "∀X0^2 (X0(x0, x1) ∧ X0^1(x0))",
            "∀X0 ∀X0^2 X0^1(x0)",
            "X0 = X1 ∨ X0 ≠ X1",
            "∀X0 X0(x0) → [X0 := θ_n](X0(x0) ∧ ∃x1 X0(x1))",
        ] {
            round_trip(s);
        }
    }

    #[test]
    fn ascii_output() {
        let f = parse("∀x0 (P0(x0) → ∃X0 X0(x0))", &sig()).unwrap();
        let opts = PrintOptions {
            ascii: true,
            expand_sugar: false,
        };
        assert_eq!(print_with(&f, opts), "forall x0 (P0(x0) -> (exists X0 X0(x0)))");
    }
}
