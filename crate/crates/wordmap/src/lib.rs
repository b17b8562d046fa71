//! Word maps on powers of finite matrix groups.
//!
//! The construction: an endomorphism of the free group `F_n` induces a map
//! on `G^n` by evaluating generator images on tuples. This crate provides
//! exact free-group arithmetic, the endomorphism/automorphism layer, small
//! matrix-group backends over prime fields, the induced tuple maps and
//! their structural laws, kernel and faithfulness experiments,
//! conjugation-orbit quotients, and the Weyl-group `w0 = -1` classification
//! of the one-tuple quotient action.

pub mod endomorphism;
pub mod free_group;
pub mod group_backend;
pub mod kernel_lab;
pub mod quotient_lab;
pub mod weyl;
pub mod word_map;

pub(crate) mod cli_support {
    use crate::group_backend::GroupElement;
    use serde::ser::Serializer;
    use serde::Serialize;

    pub fn serialize_opt_element<S: Serializer>(
        value: &Option<GroupElement>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(g) => g.rows().serialize(ser),
            None => ser.serialize_none(),
        }
    }
}
