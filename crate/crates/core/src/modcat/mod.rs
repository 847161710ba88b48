//! Finite-dimensional right modules and their morphisms: hom spaces, kernels and
//! cokernels, direct sums, pushouts and pullbacks, duality and isomorphism search.

mod constructions;
mod module;
mod morphism;

pub use constructions::{
    cokernel, direct_sum, find_isomorphism, hom_dim, hom_space, image, intertwiners, kernel, matrix_morphism, pullback,
    pushout, solve_in_span, DirectSum, IsoSearch, Pullback, Pushout, SesWitness, Subquotient,
};
pub use module::Module;
pub use morphism::Morphism;
