//! taucrest: an exact-arithmetic toolkit for tau-tilting theory over
//! trivial extensions of finite dimensional quiver algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmat`] — exact matrices over Q and prime fields;
//! * [`algebra`] — quiver algebras, structure constants, bimodules;
//! * [`repcat`] — the module category: Hom spaces, (co)kernels, covers,
//!   minimal presentations, decomposition;
//! * [`taukit`] — tau-rigidity criteria and the explicit AR translate;
//! * [`trivext`] — the pair category of modules over a trivial extension,
//!   with the functors T, U, C, Z;
//! * [`classify`] — brute-force enumeration, the theorem-verification
//!   harness and report formats;
//! * [`input`] — the line-oriented input file grammar used by the CLI.

pub mod algebra;
pub mod classify;
pub mod exactmat;
pub mod fitting;
pub mod input;
pub mod repcat;
pub mod taukit;
pub mod trivext;
