//! Scenarios shipped with the crate, embedded from `scenarios/`.

use super::Scenario;

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../scenarios/", $name, ".json")))),*]
    };
}

/// `(id, json)` of every shipped scenario.
pub const BUILTINS: &[(&str, &str)] = shipped!(
    "s2-involution",
    "s1-antipodal",
    "s1-flip",
    "s2-antipodal",
    "s2-rotation",
    "t2-halfturn",
    "t2-trivial",
    "point",
    "wedge-z2",
    "wedge-z3",
);

pub fn builtin(name: &str) -> Option<Scenario> {
    BUILTINS
        .iter()
        .find(|(id, _)| *id == name)
        .map(|(_, json)| Scenario::parse(json).expect("shipped scenarios parse"))
}

/// `(id, description)` pairs.
pub fn builtin_names() -> Vec<(&'static str, String)> {
    BUILTINS.iter().map(|(id, _)| (*id, builtin(id).expect("listed").description)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_carry_their_id() {
        for (id, _) in BUILTINS {
            assert_eq!(builtin(id).unwrap().id, *id);
        }
        assert!(builtin("klein-bottle").is_none());
    }
}
