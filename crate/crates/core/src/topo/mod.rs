//! Combinatorial CW realization of graphs and computads, Euler
//! characteristics, integral homology and fundamental-groupoid presentations.

mod cw;
pub mod snf;

pub use cw::{
    euler_characteristic, fundamental_groupoid_presentation, homology, homology_by_component, realize2, CWComplex2,
    CWData, Cell2, Cell2Data, EulerCharacteristic, Homology,
};
pub use snf::{smith_decomposition, smith_normal_form, solve_integer, IntMatrix, SmithDecomposition, SnfResult};
