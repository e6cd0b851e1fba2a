//! Multipartite entanglement measures, quantum-error-correcting codes, and
//! the entangling power of unitary evolutions.
//!
//! The library is organized around the `Q_m` family of entanglement measures:
//! the average (normalized) subsystem linear entropy over all size-`m` subsets
//! of an `n`-qudit pure state. These measures connect three bodies of
//! machinery, each living in its own module:
//!
//! - [`states`]: dense state vectors on `(C^D)^⊗n`, partial traces, the `Q_m`
//!   measures (both the direct subset average and the original Meyer-Wallach
//!   form for qubits), named states (GHZ, W), Haar sampling, and the closed
//!   form for the Haar average of `Q_m`.
//! - [`gf4`] / [`error_basis`] / [`stabilizer`]: additive codes over GF(4),
//!   the displacement (generalized Pauli) operator basis, and the map from
//!   self-orthogonal GF(4) codes to stabilizer groups, code projectors, and
//!   maximally entangled stabilized states.
//! - [`enumerators`]: Shor-Laflamme and Rains weight enumerators of a code
//!   projector, minimum distance and purity from enumerator identities,
//!   `Q_m` from a weight distribution, subspace/code averages of `Q_m`, and
//!   the MDS weight-distribution solver with its existence bound.
//! - [`epower`] / [`kicked_rotor`]: the multipartite entangling power of a
//!   unitary (exact swap-operator formula and Monte Carlo), and the quantum
//!   kicked rotor as a worked application.
//!
//! # Quick start
//!
//! ```
//! use qent::gf4::{AdditiveCode, BuiltinCode};
//! use qent::stabilizer::{stabilizer_from_code, stabilized_state};
//! use qent::states::q_m;
//!
//! // The hexacode [[6,0,4]] stabilizes a 6-qubit state whose every
//! // 3-qubit marginal is maximally mixed: Q_1 = Q_2 = Q_3 = 1.
//! let code = AdditiveCode::builtin(BuiltinCode::Hexacode);
//! let group = stabilizer_from_code(&code, None).unwrap();
//! let state = stabilized_state(&group).unwrap();
//! for m in 1..=3 {
//!     assert!((q_m(&state, m).unwrap() - 1.0).abs() < 1e-10);
//! }
//! ```
//!
//! Each major capability also has a runnable example under `examples/`;
//! see the README for the full list.

pub mod enumerators;
pub mod epower;
pub mod error_basis;
pub mod gf4;
pub mod kicked_rotor;
pub mod linalg;
pub mod stabilizer;
pub mod states;
