//! Foundational special functions: gamma, erfc, Kummer `Phi`, Tricomi `psi`
//! and the Kratzel integral.

pub mod erfc;
pub mod gamma;
pub mod kratzel;
pub mod kummer;
pub mod tricomi;

pub use erfc::{erfc, erfc_checked, erfcx, ErfcValue};
pub use gamma::{gamma, ln_gamma, ln_gamma_signed, sin_pi};
pub use kratzel::{kratzel_z, KratzelParams};
pub use kummer::{kummer_phi, kummer_phi_terms, PhiSum};
pub use tricomi::{
    tricomi_psi, tricomi_psi_eval, tricomi_psi_path, tricomi_psi_with, PsiEval, PsiParams, PsiPath,
};
