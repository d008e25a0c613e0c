pub mod cli;
pub mod decide;
pub mod jigsaw;
pub mod normal;
pub mod ri;
pub mod separator;
pub mod shift;
pub mod term;
pub mod word;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/terms.md")]
    mod terms {}
    #[doc = include_str!("../../../book/src/shifts.md")]
    mod shifts {}
    #[doc = include_str!("../../../book/src/saturation.md")]
    mod saturation {}
    #[doc = include_str!("../../../book/src/decisions.md")]
    mod decisions {}
    #[doc = include_str!("../../../book/src/right-invertible.md")]
    mod right_invertible {}
    #[doc = include_str!("../../../book/src/jigsaw.md")]
    mod jigsaw {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
