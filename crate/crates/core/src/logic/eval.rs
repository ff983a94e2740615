//! Model checking: does a permutation satisfy a formula under an assignment?

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::formula::{Formula, Relation};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Formula with variables resolved to environment slots.
#[derive(Clone, Debug)]
enum Node {
    Atom(Relation, usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
}

/// A formula compiled against a fixed list of free variables; reusable
/// across permutations.
#[derive(Clone, Debug)]
pub struct Checker {
    root: Node,
    free: Vec<String>,
    slots: usize,
}

impl Checker {
    /// Compiles `f`; `free` lists the variables supplied by the caller's
    /// environment, in order.
    pub fn new(f: &Formula, free: &[&str]) -> Result<Self> {
        let mut scope: Vec<(String, usize)> = free.iter().enumerate().map(|(i, v)| ((*v).into(), i)).collect();
        let mut slots = free.len();
        let root = compile(f, &mut scope, &mut slots)?;
        Ok(Self {
            root,
            free: free.iter().map(|v| (*v).into()).collect(),
            slots,
        })
    }

    pub fn sentence(f: &Formula) -> Result<Self> {
        Self::new(f, &[])
    }

    /// Evaluates on `sigma`; `env[i]` is the 0-based position bound to the
    /// `i`-th free variable.
    pub fn check(&self, sigma: &Permutation, env: &[usize]) -> bool {
        assert_eq!(env.len(), self.free.len(), "environment arity mismatch");
        let mut slots = alloc::vec![0usize; self.slots];
        slots[..env.len()].copy_from_slice(env);
        eval(&self.root, sigma.values(), &mut slots)
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }
}

fn compile(f: &Formula, scope: &mut Vec<(String, usize)>, slots: &mut usize) -> Result<Node> {
    let lookup = |scope: &Vec<(String, usize)>, v: &str| {
        scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|&(_, s)| s)
            .ok_or_else(|| Error::UnboundVariable(v.into()))
    };
    Ok(match f {
        Formula::Atom(r, a, b) => Node::Atom(*r, lookup(scope, a)?, lookup(scope, b)?),
        Formula::Not(g) => Node::Not(Box::new(compile(g, scope, slots)?)),
        Formula::And(gs) => Node::And(gs.iter().map(|g| compile(g, scope, slots)).collect::<Result<_>>()?),
        Formula::Or(gs) => Node::Or(gs.iter().map(|g| compile(g, scope, slots)).collect::<Result<_>>()?),
        Formula::Implies(g, h) => Node::Implies(
            Box::new(compile(g, scope, slots)?),
            Box::new(compile(h, scope, slots)?),
        ),
        Formula::Iff(g, h) => Node::Iff(
            Box::new(compile(g, scope, slots)?),
            Box::new(compile(h, scope, slots)?),
        ),
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let slot = *slots;
            *slots += 1;
            scope.push((x.clone(), slot));
            let body = Box::new(compile(g, scope, slots)?);
            scope.pop();
            if matches!(f, Formula::Exists(..)) {
                Node::Exists(slot, body)
            } else {
                Node::Forall(slot, body)
            }
        }
    })
}

fn eval(node: &Node, values: &[u32], env: &mut [usize]) -> bool {
    match node {
        Node::Atom(r, a, b) => {
            let (x, y) = (env[*a], env[*b]);
            match r {
                Relation::Eq => x == y,
                Relation::LtP => x < y,
                Relation::LtV => values[x] < values[y],
            }
        }
        Node::Not(g) => !eval(g, values, env),
        Node::And(gs) => gs.iter().all(|g| eval(g, values, env)),
        Node::Or(gs) => gs.iter().any(|g| eval(g, values, env)),
        Node::Implies(g, h) => !eval(g, values, env) || eval(h, values, env),
        Node::Iff(g, h) => eval(g, values, env) == eval(h, values, env),
        Node::Exists(s, g) => (0..values.len()).any(|e| {
            env[*s] = e;
            eval(g, values, env)
        }),
        Node::Forall(s, g) => (0..values.len()).all(|e| {
            env[*s] = e;
            eval(g, values, env)
        }),
    }
}

/// `sigma ⊨ psi` under `env`, a list of (variable, 0-based position) pairs
/// covering the free variables of `psi`.
pub fn models(sigma: &Permutation, psi: &Formula, env: &[(&str, usize)]) -> Result<bool> {
    let names: Vec<&str> = env.iter().map(|(v, _)| *v).collect();
    let checker = Checker::new(psi, &names)?;
    for &(v, e) in env {
        if e >= sigma.len() {
            return Err(Error::UnboundVariable(v.into()));
        }
    }
    let positions: Vec<usize> = env.iter().map(|&(_, e)| e).collect();
    Ok(checker.check(sigma, &positions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::{parse_formula, parse_sentence};
    use crate::perm::enumerate_av231;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn two_one_pattern_sentence() {
        let f = parse_sentence("(E x (E y (and (<p x y) (<v y x))))").unwrap();
        assert!(models(&p("2,1"), &f, &[]).unwrap());
        assert!(!models(&p("1,2"), &f, &[]).unwrap());
        let pat = p("2,1");
        for n in 0..=6 {
            for s in enumerate_av231(n).unwrap() {
                assert_eq!(models(&s, &f, &[]).unwrap(), s.contains_pattern(&pat));
            }
        }
    }

    #[test]
    fn empty_domain() {
        let e = Permutation::empty();
        assert!(!models(&e, &parse_sentence("(E x (= x x))").unwrap(), &[]).unwrap());
        assert!(models(&e, &parse_sentence("(A x (not (= x x)))").unwrap(), &[]).unwrap());
    }

    #[test]
    fn free_variables_need_bindings() {
        let f = parse_formula("(<v x y)").unwrap();
        let s = p("3,1,2");
        assert!(models(&s, &f, &[("x", 1), ("y", 2)]).unwrap());
        assert!(!models(&s, &f, &[("x", 0), ("y", 2)]).unwrap());
        assert_eq!(models(&s, &f, &[("x", 0)]), Err(Error::UnboundVariable("y".into())));
        assert!(models(&s, &f, &[("x", 0), ("y", 7)]).is_err());
    }

    #[test]
    fn shadowing_uses_innermost_binding() {
        // Inner x rebinds; "exists x: for all x, x = x" is true on nonempty.
        let f = parse_sentence("(E x (A x (= x x)))").unwrap();
        assert!(models(&p("1"), &f, &[]).unwrap());
        let g = parse_sentence("(E x (and (E x (<p x x)) (= x x)))").unwrap();
        assert!(!models(&p("1,2"), &g, &[]).unwrap());
    }

    #[test]
    fn implication_and_iff() {
        let s = p("2,1,3");
        let f = parse_sentence("(A x (imp (A y (not (<p y x))) (<v x x)))").unwrap();
        assert!(!models(&s, &f, &[]).unwrap());
        let g = parse_sentence("(A x (iff (<p x x) (<v x x)))").unwrap();
        assert!(models(&s, &g, &[]).unwrap());
    }
}
