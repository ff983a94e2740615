use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Binary relation symbols of the signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `=`
    Eq,
    /// `<_P`, position order.
    LtP,
    /// `<_V`, value order.
    LtV,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::LtP => "<p",
            Relation::LtV => "<v",
        }
    }
}

/// First-order formula over `{<_P, <_V, =}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Relation, String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: Relation, a: &str, b: &str) -> Self {
        Formula::Atom(rel, a.into(), b.into())
    }

    pub fn eq(a: &str, b: &str) -> Self {
        Self::atom(Relation::Eq, a, b)
    }

    pub fn lt_p(a: &str, b: &str) -> Self {
        Self::atom(Relation::LtP, a, b)
    }

    pub fn lt_v(a: &str, b: &str) -> Self {
        Self::atom(Relation::LtV, a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(f))
    }

    /// The empty conjunction.
    pub fn truth() -> Self {
        Formula::And(Vec::new())
    }

    /// The empty disjunction.
    pub fn falsity() -> Self {
        Formula::Or(Vec::new())
    }

    /// Maximal nesting of quantifiers; connectives take the max of their
    /// operands and negation is transparent.
    pub fn qdepth(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Not(f) => f.qdepth(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::qdepth).max().unwrap_or(0),
            Formula::Implies(f, g) | Formula::Iff(f, g) => f.qdepth().max(g.qdepth()),
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.qdepth() + 1,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, a, b) => {
                for v in [a, b] {
                    if !bound.contains(&v.as_str()) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(f, g) | Formula::Iff(f, g) => {
                f.collect_free(bound, out);
                g.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(r, a, b) => write!(f, "({} {a} {b})", r.symbol()),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(gs) | Formula::Or(gs) => {
                f.write_str(if matches!(self, Formula::And(_)) { "(and" } else { "(or" })?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            Formula::Implies(g, h) => write!(f, "(imp {g} {h})"),
            Formula::Iff(g, h) => write!(f, "(iff {g} {h})"),
            Formula::Exists(x, g) => write!(f, "(E {x} {g})"),
            Formula::Forall(x, g) => write!(f, "(A {x} {g})"),
        }
    }
}
