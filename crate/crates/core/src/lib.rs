pub mod cutgen;
pub mod dive;
pub mod instance;
pub mod latgeom;
pub mod lifting;
pub mod simplex;
pub mod tworow;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/corner.md")]
    mod corner {}
    #[doc = include_str!("../../../book/src/bodies.md")]
    mod bodies {}
    #[doc = include_str!("../../../book/src/cuts.md")]
    mod cuts {}
    #[doc = include_str!("../../../book/src/lifting.md")]
    mod lifting {}
    #[doc = include_str!("../../../book/src/diving.md")]
    mod diving {}
}
