//! The twelve exceptional curves, by label and conductor.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCurve {
    pub label: &'static str,
    pub conductor: u64,
}

const LIST: [ExceptionalCurve; 12] = {
    const fn c(label: &'static str, conductor: u64) -> ExceptionalCurve {
        ExceptionalCurve { label, conductor }
    }
    [
        c("11A", 11),
        c("15A", 15),
        c("17A", 17),
        c("19A", 19),
        c("21A", 21),
        c("24A", 24),
        c("27A", 27),
        c("32A", 32),
        c("36A", 36),
        c("37B", 37),
        c("49A", 49),
        c("243B", 243),
    ]
};

pub fn cm_exceptional_list() -> &'static [ExceptionalCurve] {
    &LIST
}
