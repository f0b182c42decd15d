//! Exact jets of rational expressions in `z, zbar, xi, xibar`, and the
//! pointwise identity checks built on them.

mod expr;
mod identities;
mod jet;
mod kernels;
mod mharmonic;
mod points;

pub use expr::{bilinear, vars, Expr, Var};
pub use identities::{verify_pointwise_identity, Identity};
pub use jet::{eval_jet, eval_jet_in, eval_value, Jet, JetSpace, Side, SideOps};
pub use kernels::{
    affine_lhs, affine_rhs, defining_xi, defining_z, inner_xi_z, inner_z_xi, inv_kernel, kernel_expr, mobius_lhs,
    mobius_rhs, power_kernel, weighted_kernel, z_weighted_kernel, KernelParams, MobiusParam,
};
pub use mharmonic::{
    check_eigen, check_mharmonic, inv_laplacian_at, non_pluriharmonic_witness, remark_example_n2, remark_example_n3,
    EigenVerdict,
};
pub use points::{random_points, SamplePoint};
