//! Sentences shared by the integration tests.
#![allow(dead_code)]

/// `(name, sentence)` of quantifier depth at most 2.
pub const SHALLOW: &[(&str, &str)] = &[
    ("nonempty", "(E x (= x x))"),
    ("tautology", "(A x (= x x))"),
    ("empty", "(not (E x (= x x)))"),
    ("single element", "(E x (A y (= x y)))"),
    ("at least two elements", "(E x (E y (not (= x y))))"),
    ("contains 21", "(E x (E y (and (<p x y) (<v y x))))"),
    ("contains 12", "(E x (E y (and (<p x y) (<v x y))))"),
    ("max first", "(E x (A y (and (not (<p y x)) (not (<v x y)))))"),
    ("max last", "(E x (A y (and (not (<p x y)) (not (<v x y)))))"),
    ("min first", "(E x (A y (and (not (<p y x)) (not (<v y x)))))"),
    ("min last", "(E x (A y (and (not (<p x y)) (not (<v y x)))))"),
    (
        "max first or last",
        "(or (E x (A y (and (not (<p y x)) (not (<v x y))))) (E x (A y (and (not (<p x y)) (not (<v x y))))))",
    ),
    (
        "min first and max last",
        "(and (E x (A y (and (not (<p y x)) (not (<v y x))))) (E x (A y (and (not (<p x y)) (not (<v x y))))))",
    ),
];

/// Depth-3 sentences.
pub const DEEP: &[(&str, &str)] = &[
    ("contains 132", "(E x (E y (E z (and (<p x y) (<p y z) (<v x z) (<v z y)))))"),
    ("contains 321", "(E x (E y (E z (and (<p x y) (<p y z) (<v y x) (<v z y)))))"),
    ("contains 213", "(E x (E y (E z (and (<p x y) (<p y z) (<v y x) (<v x z)))))"),
    (
        "adjacent descent",
        "(E x (E y (and (<p x y) (<v y x) (A z (not (and (<p x z) (<p z y)))))))",
    ),
    (
        "first below last",
        "(E x (E y (and (A z (not (<p z x))) (A z (not (<p y z))) (<v x y))))",
    ),
    (
        "tau is 1",
        "(E m (and (A y (or (= y m) (<v y m))) (E x (and (<p x m) (A y (imp (<p y m) (= y x)))))))",
    ),
];

pub const MAX_FIRST: &str = "(E x (A y (and (not (<p y x)) (not (<v x y)))))";
pub const CONTAINS_21: &str = "(E x (E y (and (<p x y) (<v y x))))";
pub const EMPTY: &str = "(not (E x (= x x)))";
pub const SINGLE: &str = "(E x (A y (= x y)))";
pub const TAU_IS_ONE: &str =
    "(E m (and (A y (or (= y m) (<v y m))) (E x (and (<p x m) (A y (imp (<p y m) (= y x)))))))";
