//! Small reference algebras used throughout the tests, the CLI corpus and the docs.
//!
//! | name       | group     | basis (degree)                  | brackets                         |
//! |------------|-----------|---------------------------------|----------------------------------|
//! | `abelian2` | trivial   | x, y                            | none                             |
//! | `sl2`      | trivial   | e, f, h                         | [e,f]=h, [h,e]=2e, [h,f]=-2f     |
//! | `h3`       | trivial   | x, y, z                         | [x,y]=z                          |
//! | `super`    | Z/2       | θ (1), z (0)                    | [θ,θ]=z                          |
//! | `klein`    | Z/2 × Z/2 | x (1,0), y (0,1), z (1,1)       | [x,y]=z, [y,z]=x, [z,x]=y        |
//! | `qheis3`   | Z/3 × Z/3 | x (1,0), y (0,1), z (1,1)       | [x,y]=z                          |
//!
//! `klein` carries `ε((a₁,a₂),(b₁,b₂)) = (-1)^{a₁b₂ - a₂b₁}`; `qheis3` the
//! analogous `ζ₃^{a₁b₂ - a₂b₁}`, which exercises genuinely cyclotomic signs.

use crate::algebra::ColorLieAlgebra;
use crate::grading::{Bicharacter, GradingGroup};
use crate::scalar::Scalar;

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

fn trivially_graded(names: &[&str]) -> crate::algebra::ColorLieAlgebraBuilder {
    let g = GradingGroup::trivial();
    let mut b = ColorLieAlgebra::builder(Bicharacter::trivial(g.clone()));
    for n in names {
        b = b.basis_element(n, g.identity());
    }
    b
}

pub fn abelian2() -> ColorLieAlgebra {
    trivially_graded(&["x", "y"]).build().expect("abelian2 fixture")
}

pub fn sl2() -> ColorLieAlgebra {
    trivially_graded(&["e", "f", "h"])
        .bracket_named("e", "f", &[("h", int(1))])
        .bracket_named("h", "e", &[("e", int(2))])
        .bracket_named("h", "f", &[("f", int(-2))])
        .build()
        .expect("sl2 fixture")
}

pub fn h3() -> ColorLieAlgebra {
    trivially_graded(&["x", "y", "z"]).bracket_named("x", "y", &[("z", int(1))]).build().expect("h3 fixture")
}

pub fn super_line() -> ColorLieAlgebra {
    let s = Bicharacter::super_sign();
    let g = s.group().clone();
    ColorLieAlgebra::builder(s)
        .basis_element("theta", g.element(&[1]).unwrap())
        .basis_element("z", g.identity())
        .bracket_named("theta", "theta", &[("z", int(1))])
        .build()
        .expect("super fixture")
}

fn symplectic_color(n: u32, value: Scalar) -> crate::algebra::ColorLieAlgebraBuilder {
    let g = GradingGroup::new(0, vec![n, n]).unwrap();
    let b = Bicharacter::new(g.clone(), vec![vec![None, Some(value)], vec![None, None]]).unwrap();
    ColorLieAlgebra::builder(b)
        .basis_element("x", g.element(&[1, 0]).unwrap())
        .basis_element("y", g.element(&[0, 1]).unwrap())
        .basis_element("z", g.element(&[1, 1]).unwrap())
}

pub fn klein_color() -> ColorLieAlgebra {
    symplectic_color(2, int(-1))
        .bracket_named("x", "y", &[("z", int(1))])
        .bracket_named("y", "z", &[("x", int(1))])
        .bracket_named("z", "x", &[("y", int(1))])
        .build()
        .expect("klein color fixture")
}

pub fn qheis3() -> ColorLieAlgebra {
    symplectic_color(3, Scalar::root_of_unity(3, 1))
        .bracket_named("x", "y", &[("z", int(1))])
        .build()
        .expect("qheis3 fixture")
}

/// The five reference fixtures of the corpus.
pub fn shipped() -> Vec<(&'static str, ColorLieAlgebra)> {
    vec![
        ("abelian2", abelian2()),
        ("sl2", sl2()),
        ("h3", h3()),
        ("super", super_line()),
        ("klein", klein_color()),
    ]
}

/// All fixtures, including the cyclotomic `qheis3`.
pub fn all() -> Vec<(&'static str, ColorLieAlgebra)> {
    let mut v = shipped();
    v.push(("qheis3", qheis3()));
    v
}

pub fn by_name(name: &str) -> Option<ColorLieAlgebra> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
