//! Filtrations on fields and central simple algebras, glider ideals and
//! glider Brauer–Severi sets, computed exactly over semilocal PIDs.

pub mod arith;
pub mod brandt;
pub mod enumerate;
pub mod filtration;
pub mod glider;
pub mod lattice;
pub mod orders;
pub mod rank2;
pub mod suite;
pub mod tensor;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    pub mod arithmetic {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    pub mod lattices {}
    #[doc = include_str!("../../../book/src/filtrations.md")]
    pub mod filtrations {}
    #[doc = include_str!("../../../book/src/gliders.md")]
    pub mod gliders {}
    #[doc = include_str!("../../../book/src/gbs.md")]
    pub mod gbs {}
    #[doc = include_str!("../../../book/src/orders.md")]
    pub mod orders {}
    #[doc = include_str!("../../../book/src/tensor.md")]
    pub mod tensor {}
    #[doc = include_str!("../../../book/src/brandt.md")]
    pub mod brandt {}
    #[doc = include_str!("../../../book/src/rank2.md")]
    pub mod rank2 {}
}
