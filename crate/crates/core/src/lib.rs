//! Threshold secret sharing with public parities.
//!
//! The secret is data symbol 0 of a code, the other `k - 1` data symbols are
//! fresh random symbols handed to the participants, and the `r` parity
//! symbols are published. Any `k - r` participants recover the secret
//! together with the public parities; fewer learn nothing about it.
//!
//! Three code families are provided, all selectable by name through
//! [`registry::Registry`]:
//!
//! * `rs`: shortened Reed-Solomon over GF(2^m) ([`gf2m`]),
//! * `evenodd`: generalized EVENODD over GF(2)[x]/M_p(x) ([`ring`]), XOR only,
//! * `grdp`: generalized row-diagonal parity, XOR only.
//!
//! [`oracle`] holds brute-force GF(2) decoders and the exhaustive secrecy
//! audit used to cross-check the fast paths.

pub mod codes;
pub mod error;
pub mod gf2m;
pub mod oracle;
pub mod registry;
pub mod ring;
pub mod scheme;

pub use error::{Error, Result};
