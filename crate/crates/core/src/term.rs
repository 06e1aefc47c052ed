//! Terms over a finitary signature, inequations, and presentations.
//!
//! Term syntax (shared with the command-line front end): prefix application
//! `op(t1,...,tn)`, identifiers `[A-Za-z_][A-Za-z0-9_]*`, constants written
//! `e()` or bare `e`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("duplicate operation symbol `{0}`")]
    DuplicateOp(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("operation `{op}` expects {want} arguments, got {got}")]
    ArityMismatch { op: String, want: usize, got: usize },
    #[error("identifier `{0}` is not a variable of the context or a constant")]
    UnknownIdentifier(String),
    #[error("variable `{0}` clashes with an operation symbol")]
    VariableClash(String),
    #[error("syntax error at byte {0}: {1}")]
    Syntax(usize, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpSym {
    pub name: String,
    pub arity: usize,
}

/// A finitary signature: named operation symbols with arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSym>,
}

impl Signature {
    pub fn new(ops: Vec<(&str, usize)>) -> Result<Signature, TermError> {
        Signature::from_symbols(
            ops.into_iter()
                .map(|(name, arity)| OpSym {
                    name: name.to_string(),
                    arity,
                })
                .collect(),
        )
    }

    pub fn from_symbols(ops: Vec<OpSym>) -> Result<Signature, TermError> {
        for i in 0..ops.len() {
            for j in 0..i {
                if ops[i].name == ops[j].name {
                    return Err(TermError::DuplicateOp(ops[i].name.clone()));
                }
            }
        }
        Ok(Signature { ops })
    }

    pub fn empty() -> Signature {
        Signature { ops: Vec::new() }
    }

    pub fn ops(&self) -> &[OpSym] {
        &self.ops
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, idx: usize) -> usize {
        self.ops[idx].arity
    }

    pub fn op_name(&self, idx: usize) -> &str {
        &self.ops[idx].name
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.arity).max().unwrap_or(0)
    }
}

/// A term: an atom (variable or generator constant, depending on context) or
/// an operation applied to arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Atom(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn atom(name: &str) -> Term {
        Term::Atom(name.to_string())
    }

    pub fn app(op: &str, args: Vec<Term>) -> Term {
        Term::App(op.to_string(), args)
    }

    /// Atoms have depth 0; an application has depth one more than its deepest
    /// argument (so constants have depth 1).
    pub fn depth(&self) -> usize {
        match self {
            Term::Atom(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Atom(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Atom(v) => out.push(v),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    /// Simultaneous substitution of atoms.
    pub fn substitute(&self, subst: &[(String, Term)]) -> Term {
        match self {
            Term::Atom(v) => subst
                .iter()
                .find(|(name, _)| name == v)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| self.clone()),
            Term::App(op, args) => Term::App(
                op.clone(),
                args.iter().map(|a| a.substitute(subst)).collect(),
            ),
        }
    }

    /// Checks arities against the signature and that every atom is either in
    /// `allowed` or resolves as a constant already (constants are stored as
    /// nullary applications by the parser).
    pub fn validate(&self, sig: &Signature, allowed: &[String]) -> Result<(), TermError> {
        match self {
            Term::Atom(v) => {
                if sig.op_index(v).is_some() {
                    return Err(TermError::VariableClash(v.clone()));
                }
                if !allowed.iter().any(|a| a == v) {
                    return Err(TermError::UnknownIdentifier(v.clone()));
                }
                Ok(())
            }
            Term::App(op, args) => {
                let idx = sig
                    .op_index(op)
                    .ok_or_else(|| TermError::UnknownOp(op.clone()))?;
                if sig.arity(idx) != args.len() {
                    return Err(TermError::ArityMismatch {
                        op: op.clone(),
                        want: sig.arity(idx),
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.validate(sig, allowed))
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(v) => write!(f, "{v}"),
            Term::App(op, args) if args.is_empty() => write!(f, "{op}"),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Total deterministic order on terms used to pick class representatives:
/// depth first, then size, then structural comparison.
pub fn term_order(a: &Term, b: &Term) -> std::cmp::Ordering {
    a.depth()
        .cmp(&b.depth())
        .then(a.size().cmp(&b.size()))
        .then_with(|| a.cmp(b))
}

/// An inequation `lhs <= rhs` over a discrete context of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequation {
    pub context: Vec<String>,
    pub lhs: Term,
    pub rhs: Term,
}

impl Inequation {
    pub fn new(context: Vec<&str>, lhs: Term, rhs: Term) -> Inequation {
        Inequation {
            context: context.into_iter().map(String::from).collect(),
            lhs,
            rhs,
        }
    }

    pub fn validate(&self, sig: &Signature) -> Result<(), TermError> {
        for v in &self.context {
            if sig.op_index(v).is_some() {
                return Err(TermError::VariableClash(v.clone()));
            }
        }
        self.lhs.validate(sig, &self.context)?;
        self.rhs.validate(sig, &self.context)
    }
}

impl fmt::Display for Inequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// A presentation: a signature plus inequational axioms. Equations are stored
/// expanded as two opposed inequations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    sig: Signature,
    axioms: Vec<Inequation>,
}

impl Presentation {
    pub fn new(sig: Signature, axioms: Vec<Inequation>) -> Result<Presentation, TermError> {
        for ax in &axioms {
            ax.validate(&sig)?;
        }
        Ok(Presentation { sig, axioms })
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn axioms(&self) -> &[Inequation] {
        &self.axioms
    }

    /// Adds `lhs <= rhs`.
    pub fn push_le(&mut self, ineq: Inequation) -> Result<(), TermError> {
        ineq.validate(&self.sig)?;
        self.axioms.push(ineq);
        Ok(())
    }

    /// Adds an equation as two opposed inequations.
    pub fn push_eq(&mut self, ineq: Inequation) -> Result<(), TermError> {
        ineq.validate(&self.sig)?;
        self.axioms.push(ineq.clone());
        self.axioms.push(Inequation {
            context: ineq.context,
            lhs: ineq.rhs,
            rhs: ineq.lhs,
        });
        Ok(())
    }

    /// The semilattice presentation used throughout the test corpus:
    /// associativity, commutativity and idempotence of `meet` as equations,
    /// plus the two projection inequations.
    pub fn semilattice() -> Presentation {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        let m = |a: Term, b: Term| Term::app("meet", vec![a, b]);
        let (x, y, z) = (Term::atom("x"), Term::atom("y"), Term::atom("z"));
        let mut pres = Presentation::new(sig, Vec::new()).unwrap();
        pres.push_eq(Inequation::new(
            vec!["x", "y", "z"],
            m(m(x.clone(), y.clone()), z.clone()),
            m(x.clone(), m(y.clone(), z.clone())),
        ))
        .unwrap();
        pres.push_eq(Inequation::new(
            vec!["x", "y"],
            m(x.clone(), y.clone()),
            m(y.clone(), x.clone()),
        ))
        .unwrap();
        pres.push_eq(Inequation::new(vec!["x"], m(x.clone(), x.clone()), x.clone()))
            .unwrap();
        pres.push_le(Inequation::new(
            vec!["x", "y"],
            m(x.clone(), y.clone()),
            x.clone(),
        ))
        .unwrap();
        pres.push_le(Inequation::new(vec!["x", "y"], m(x, y.clone()), y)).unwrap();
        pres
    }

    /// Ordered monoids: a binary `mul`, a constant `e`, associativity and the
    /// two unit laws.
    pub fn ordered_monoid() -> Presentation {
        let sig = Signature::new(vec![("mul", 2), ("e", 0)]).unwrap();
        let m = |a: Term, b: Term| Term::app("mul", vec![a, b]);
        let e = || Term::app("e", vec![]);
        let (x, y, z) = (Term::atom("x"), Term::atom("y"), Term::atom("z"));
        let mut pres = Presentation::new(sig, Vec::new()).unwrap();
        pres.push_eq(Inequation::new(
            vec!["x", "y", "z"],
            m(m(x.clone(), y.clone()), z.clone()),
            m(x.clone(), m(y.clone(), z.clone())),
        ))
        .unwrap();
        pres.push_eq(Inequation::new(vec!["x"], m(e(), x.clone()), x.clone()))
            .unwrap();
        pres.push_eq(Inequation::new(vec!["x"], m(x.clone(), e()), x)).unwrap();
        pres
    }

    /// Pointed posets: one constant `e` below everything.
    pub fn pointed() -> Presentation {
        let sig = Signature::new(vec![("e", 0)]).unwrap();
        let mut pres = Presentation::new(sig, Vec::new()).unwrap();
        pres.push_le(Inequation::new(
            vec!["x"],
            Term::app("e", vec![]),
            Term::atom("x"),
        ))
        .unwrap();
        pres
    }
}

/// Parses a term; identifiers resolve as operations of `sig` when they match
/// an operation symbol, otherwise as atoms (which must be listed in
/// `allowed` — context variables or generator names).
pub fn parse_term(src: &str, sig: &Signature, allowed: &[String]) -> Result<Term, TermError> {
    let mut p = TermParser {
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let t = p.term(sig)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(TermError::Syntax(p.pos, "trailing input".into()));
    }
    t.validate(sig, allowed)?;
    Ok(t)
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<String, TermError> {
        let start = self.pos;
        if self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Ok(String::from_utf8(self.src[start..self.pos].to_vec()).unwrap())
        } else {
            Err(TermError::Syntax(self.pos, "expected identifier".into()))
        }
    }

    fn term(&mut self, sig: &Signature) -> Result<Term, TermError> {
        let name = self.ident()?;
        self.skip_ws();
        if self.pos < self.src.len() && self.src[self.pos] == b'(' {
            self.pos += 1;
            self.skip_ws();
            let mut args = Vec::new();
            if self.pos < self.src.len() && self.src[self.pos] == b')' {
                self.pos += 1;
            } else {
                loop {
                    args.push(self.term(sig)?);
                    self.skip_ws();
                    if self.pos < self.src.len() && self.src[self.pos] == b',' {
                        self.pos += 1;
                        self.skip_ws();
                    } else if self.pos < self.src.len() && self.src[self.pos] == b')' {
                        self.pos += 1;
                        break;
                    } else {
                        return Err(TermError::Syntax(self.pos, "expected `,` or `)`".into()));
                    }
                }
            }
            Ok(Term::App(name, args))
        } else if sig.op_index(&name).is_some() {
            // Bare constant form.
            Ok(Term::App(name, Vec::new()))
        } else {
            Ok(Term::Atom(name))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_prefix_application() {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        let allowed = vec!["x".to_string(), "y".to_string()];
        let t = parse_term("meet(meet(x,y),x)", &sig, &allowed).unwrap();
        assert_eq!(t.to_string(), "meet(meet(x,y),x)");
        assert_eq!(t.depth(), 2);
        assert_eq!(t.size(), 5);
    }

    #[test]
    fn parse_bare_and_applied_constant() {
        let sig = Signature::new(vec![("e", 0), ("mul", 2)]).unwrap();
        let t1 = parse_term("e", &sig, &[]).unwrap();
        let t2 = parse_term("e()", &sig, &[]).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1, Term::app("e", vec![]));
        assert_eq!(t1.depth(), 1);
    }

    #[test]
    fn arity_mismatch_rejected() {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        let err = parse_term("meet(x)", &sig, &["x".to_string()]).unwrap_err();
        assert!(matches!(err, TermError::ArityMismatch { .. }));
    }

    #[test]
    fn unknown_identifier_rejected() {
        let sig = Signature::new(vec![("meet", 2)]).unwrap();
        let err = parse_term("meet(x,w)", &sig, &["x".to_string()]).unwrap_err();
        assert_eq!(err, TermError::UnknownIdentifier("w".into()));
    }

    #[test]
    fn equations_expand_to_two_inequations() {
        let sl = Presentation::semilattice();
        // Three equations and two plain inequations.
        assert_eq!(sl.axioms().len(), 8);
    }

    #[test]
    fn representative_order_prefers_shallow_then_small() {
        let a = Term::atom("a");
        let m = Term::app("meet", vec![a.clone(), a.clone()]);
        assert_eq!(term_order(&a, &m), std::cmp::Ordering::Less);
        assert_eq!(term_order(&m, &m), std::cmp::Ordering::Equal);
    }
}
