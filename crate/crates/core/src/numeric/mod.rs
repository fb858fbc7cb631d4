//! Small numerical toolbox: quadrature, root finding, special functions,
//! least squares, and derivative-free optimisation.

pub mod fit;
pub mod optimize;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod special;
