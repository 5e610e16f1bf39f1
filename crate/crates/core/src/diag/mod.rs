//! Diagonal unitaries on the dyadic grid.
//!
//! A phase table `diag(e^{2πi·p_i/2^m})` is quantized from radians with floor
//! semantics and then synthesized as a product of `C^kZ^(±l)` gates:
//!
//! - [`peel_synthesize`] removes the odd part of every numerator level by
//!   level (`m` down to 1), visiting basis patterns in order of increasing
//!   Hamming weight. At most `m·(2^n − 1)` gates.
//! - [`sparse_synthesize`] handles each nonzero entry on its own with an
//!   X-conjugated fully-controlled phase. At most `|support|·(2n + m)` gates.
//!
//! [`reconstruct`] recomputes the phase table of a gate list with integer
//! arithmetic only and is the reference check for both paths.

mod counts;
mod dyadic;
mod synth;

pub use counts::{count_gates, GateCounts};
pub use dyadic::{quantize, DyadicPhase, PhaseSpec, MAX_LEVEL};
pub use synth::{
    global_phase_gates, peel_synthesize, reconstruct, reconstruct_gates, sparse_synthesize,
    SynthesisResult,
};
