//! Assembly of 2-uniform Hjelmslev planes from seed objects.
//!
//! Every point `P` of the base plane is blown up into a copy of an affine
//! plane of order `m`. For each base line `l`, each row of the array assigned
//! to `l` selects one line from a chosen parallel class of every
//! neighbourhood on `l`; the union of those selections is a line of the
//! result. All free choices live in a [`ConstructionChoices`] ledger, so a
//! construction is replayable from its inputs.

mod algorithm;
mod choices;
mod plane;
mod transform;

pub use algorithm::{construct_ah, construct_ph};
pub use choices::{
    canonical_choices, random_choices, ConstructionChoices, LineChoice, PointChoice,
};
pub use plane::{BasePlane, CompositePoint, HjelmslevPlane, PlaneKind, Provenance};
pub use transform::{extend_ah, truncate_ph};
