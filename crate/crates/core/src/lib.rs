pub mod bounds;
pub mod complex;
pub mod pathspace;
pub mod planners;
pub mod scenario;
pub mod symmetry;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/planners.md")]
    mod planners {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
}
