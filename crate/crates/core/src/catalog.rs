//! Named lattices and identity files bundled with the library. Named
//! semigroups live in [`crate::semigroup::catalog`].

use crate::lattice::FiniteLattice;
use crate::word::{parse_identities, Identity};

macro_rules! bundled {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../catalog/", $dir, "/", $name)))),*]
    };
}

const LATTICES: &[(&str, &str)] = bundled!("lattices":
    "chain2.json", "chain3.json", "chain4.json", "chain5.json",
    "boolean2.json", "boolean3.json", "M3.json", "N5.json", "partition4.json",
);

const IDENTITIES: &[(&str, &str)] = bundled!("identities":
    "W.txt", "SL.txt", "ZM.txt", "LZ.txt", "N3.txt", "W-subvarieties.txt", "exponents.txt",
);

fn stem(file: &str) -> &str {
    file.rsplit_once('.').map_or(file, |(s, _)| s)
}

pub fn lattice_names() -> Vec<&'static str> {
    LATTICES.iter().map(|(f, _)| stem(f)).collect()
}

pub fn lattice_json(name: &str) -> Option<&'static str> {
    LATTICES.iter().find(|(f, _)| stem(f) == name).map(|(_, text)| *text)
}

pub fn lattice(name: &str) -> Option<FiniteLattice> {
    lattice_json(name).map(|t| FiniteLattice::from_json_str(t).expect("bundled lattices are valid"))
}

pub fn lattices() -> Vec<(&'static str, FiniteLattice)> {
    lattice_names().into_iter().map(|n| (n, lattice(n).unwrap())).collect()
}

pub fn identity_file_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|(f, _)| stem(f)).collect()
}

pub fn identity_text(name: &str) -> Option<&'static str> {
    IDENTITIES.iter().find(|(f, _)| stem(f) == name).map(|(_, text)| *text)
}

pub fn identities(name: &str) -> Option<Vec<Identity>> {
    identity_text(name).map(|t| parse_identities(t).expect("bundled identity files parse"))
}
