//! The bicategories `Span(FinSet)` and `FinSet-Mat`: composition by pullback
//! and by the sum-of-products formula, the associator and unitors as explicit
//! bijections, and monads in both, which are exactly small categories.

mod elem;
mod matrix;
mod monad;
mod span;

pub use elem::{atoms, Elem};
pub use matrix::{
    mat_associator, mat_compose, mat_hcomp, mat_left_unitor, mat_pentagon, mat_right_unitor, mat_triangle,
    EntryData, FinMatrix, MatCell, MatrixData,
};
pub use monad::{cat_to_mat_monad, cat_to_span_monad, mat_monad_to_cat, span_monad_to_cat, MatMonad, SpanMonad};
pub use span::{
    span_associator, span_compose, span_hcomp, span_left_unitor, span_pentagon, span_right_unitor, span_triangle,
    FinSpan, SpanCell, SpanData, SpanElemData,
};
