pub mod expr;
pub mod bessel;
pub mod quad;
pub mod transform;
pub mod lift;
pub mod kernels;
pub mod verify;
