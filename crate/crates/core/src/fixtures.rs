//! Shipped example data.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::datum::{
    ActionSpec, DatumDocument, GeneratorSpec, GroupSpec, LabelSpec, Parity, PiSpec, TauSpec, TwistSpec, WSigmaHatSpec,
};

pub const FIXTURE_NAMES: [&str; 7] = ["prime3", "gl-reducible", "siegel1", "signonly", "prime2", "prime5", "prime7"];

pub const PRIME_FAMILY: [u32; 4] = [2, 3, 5, 7];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {name:?}; available: {}", FIXTURE_NAMES.join(", "))]
    Unknown { name: String },
    #[error("the prime family is only shipped for p in {{2, 3, 5, 7}}, not {0}")]
    UnsupportedPrime(u32),
}

fn label(id: &str, size: u32) -> LabelSpec {
    LabelSpec { id: id.to_string(), size }
}

fn tau(x_tau: &[&str], generic: bool, mult_one: bool) -> TauSpec {
    TauSpec { x_tau: x_tau.iter().map(|s| s.to_string()).collect(), generic, mult_one }
}

fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn parity_of(blocks: &[u32], m: u32) -> Parity {
    if (2 * blocks.iter().sum::<u32>() + m).is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `r = p` blocks of size 1, `m = 2`, and a character `χ` of order `p`
/// cycling `π_1 → π_2 → … → π_p → π_1`. `R(σ) = Z_p ⋉ Z_2^p`.
pub fn prime_family_document(p: u32) -> Result<DatumDocument, FixtureError> {
    if !PRIME_FAMILY.contains(&p) {
        return Err(FixtureError::UnsupportedPrime(p));
    }
    let ids: Vec<String> = (0..p).map(|k| format!("l{k}")).collect();
    let cycle: BTreeMap<String, String> =
        (0..p as usize).map(|k| (ids[k].clone(), ids[(k + 1) % p as usize].clone())).collect();
    let blocks = vec![1; p as usize];
    Ok(DatumDocument {
        group: GroupSpec { r: p as usize, parity: Some(parity_of(&blocks, 2)), blocks, m: 2 },
        twists: TwistSpec { generators: vec![GeneratorSpec { name: "chi".into(), order: p }], eps: BTreeMap::new() },
        labels: ids.iter().map(|id| label(id, 1)).collect(),
        actions: ActionSpec { chi: BTreeMap::from([("chi".to_string(), cycle)]), eps: BTreeMap::new() },
        pi: PiSpec { components: ids.clone(), tau: tau(&["chi"], true, true) },
        delta_prime: Vec::new(),
        w_sigma_hat: WSigmaHatSpec::Infer,
        notes: format!("r = {p}, each pi_i a twist of the previous one by chi of order {p}; generic tau"),
    })
}

pub fn fixture_document(name: &str) -> Result<DatumDocument, FixtureError> {
    match name {
        "prime2" => prime_family_document(2),
        "prime3" => prime_family_document(3),
        "prime5" => prime_family_document(5),
        "prime7" => prime_family_document(7),
        "gl-reducible" => Ok(DatumDocument {
            group: GroupSpec { r: 2, blocks: vec![1, 1], m: 1, parity: Some(Parity::Odd) },
            twists: TwistSpec { generators: Vec::new(), eps: BTreeMap::new() },
            labels: vec![label("a", 1), label("a_dual", 1)],
            actions: ActionSpec { chi: BTreeMap::new(), eps: map(&[("a", "a_dual"), ("a_dual", "a")]) },
            pi: PiSpec { components: vec!["a".into(), "a".into()], tau: tau(&[], true, true) },
            delta_prime: vec!["e1-e2".into()],
            w_sigma_hat: WSigmaHatSpec::Infer,
            notes: "pi_1 = pi_2, not eps-self-dual; the reflection in e1-e2 kills the R-group".into(),
        }),
        "siegel1" => Ok(DatumDocument {
            group: GroupSpec { r: 1, blocks: vec![2], m: 0, parity: Some(Parity::Even) },
            twists: TwistSpec { generators: Vec::new(), eps: BTreeMap::new() },
            labels: vec![label("p", 2)],
            actions: ActionSpec::default(),
            pi: PiSpec { components: vec!["p".into()], tau: tau(&[], true, true) },
            delta_prime: Vec::new(),
            w_sigma_hat: WSigmaHatSpec::Infer,
            notes: "Siegel Levi, pi_1 eps-self-dual with no vanishing Plancherel measure".into(),
        }),
        "signonly" => Ok(DatumDocument {
            group: GroupSpec { r: 2, blocks: vec![1, 1], m: 2, parity: Some(Parity::Even) },
            twists: TwistSpec { generators: vec![GeneratorSpec { name: "chi".into(), order: 2 }], eps: BTreeMap::new() },
            labels: vec![label("a", 1), label("b", 1), label("e", 1)],
            actions: ActionSpec {
                chi: BTreeMap::from([("chi".to_string(), map(&[("a", "b"), ("b", "a")]))]),
                eps: map(&[("a", "b"), ("b", "a")]),
            },
            pi: PiSpec { components: vec!["a".into(), "e".into()], tau: tau(&["chi"], true, true) },
            delta_prime: Vec::new(),
            w_sigma_hat: WSigmaHatSpec::Explicit(vec!["1".into(), "chi".into()]),
            notes: "s_chi is trivial and w_chi = C_1 lies in W(sigma) but not in W(pi)".into(),
        }),
        _ => Err(FixtureError::Unknown { name: name.to_string() }),
    }
}

/// The canonical bytes written by the `fixtures` command.
pub fn fixture_json(name: &str) -> Result<String, FixtureError> {
    fixture_document(name).map(|d| d.to_canonical_json())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{parse_datum, ParseOptions};

    #[test]
    fn every_fixture_validates() {
        for name in FIXTURE_NAMES {
            parse_datum(&fixture_json(name).unwrap(), ParseOptions::default()).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        }
    }

    #[test]
    fn unknown_lists_names() {
        let err = fixture_json("unknown").unwrap_err();
        assert!(err.to_string().contains("prime3") && err.to_string().contains("siegel1"));
        assert_eq!(prime_family_document(11).unwrap_err(), FixtureError::UnsupportedPrime(11));
    }

    #[test]
    fn bytes_are_stable() {
        assert_eq!(fixture_json("prime3").unwrap(), fixture_json("prime3").unwrap());
        assert!(fixture_json("prime3").unwrap().ends_with("}\n"));
    }
}
