//! Orbital filling rules, ground-state configurations and the
//! Madelung-regular / Madelung-exceptional classification.
//!
//! Three filling rules are supported:
//!
//! * [`FillingRule::FockN`]: increasing `n`, ties broken by increasing `l`.
//! * [`FillingRule::HydrogenicNL`]: increasing `n`, then increasing `l`.
//! * [`FillingRule::Madelung`]: increasing `n + l`, then increasing `n`.
//!
//! Configurations are read and written in ASCII noble-gas-core notation,
//! e.g. `[Kr] 4d5 5s1` or `1s2 2s2 2p3`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest atomic number accepted by [`fill`].
pub const MAX_Z: u32 = 118;

/// Spectroscopic letters for `l = 0, 1, 2, ...`.
const SPECTROSCOPIC: &[u8] = b"spdfghiklmnoqrtuv";

const BUNDLED_DATASET: &str = include_str!("../data/elements.csv");

pub const ELEMENT_SYMBOLS: [&str; MAX_Z as usize] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In",
    "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb",
    "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl",
    "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk",
    "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh",
    "Fl", "Mc", "Lv", "Ts", "Og",
];

/// Noble-gas cores usable in bracket notation, innermost first.
const NOBLE_CORES: [(&str, &str); 7] = [
    ("He", "1s2"),
    ("Ne", "[He] 2s2 2p6"),
    ("Ar", "[Ne] 3s2 3p6"),
    ("Kr", "[Ar] 3d10 4s2 4p6"),
    ("Xe", "[Kr] 4d10 5s2 5p6"),
    ("Rn", "[Xe] 4f14 5d10 6s2 6p6"),
    ("Og", "[Rn] 5f14 6d10 7s2 7p6"),
];

/// Element symbol for atomic number `z`, if `1 <= z <= 118`.
pub fn element_symbol(z: u32) -> Option<&'static str> {
    ELEMENT_SYMBOLS.get((z as usize).checked_sub(1)?).copied()
}

/// A hydrogen-like `(n, l)` shell.
///
/// The derived ordering is by `(n, l)`, which is also the order used when
/// printing configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbital {
    n: u32,
    l: u32,
}

impl Orbital {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("principal quantum number must be >= 1"));
        }
        if l >= n {
            return Err(Error::domain(format!(
                "orbital angular momentum l={l} must be below n={n}"
            )));
        }
        Ok(Orbital { n, l })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn l(self) -> u32 {
        self.l
    }

    /// Number of electrons the shell holds: `2(2l+1)`.
    pub fn capacity(self) -> u32 {
        2 * (2 * self.l + 1)
    }

    pub fn letter(self) -> Option<char> {
        SPECTROSCOPIC.get(self.l as usize).map(|&b| b as char)
    }

    pub fn madelung_key(self) -> (u32, u32) {
        madelung_key(self)
    }
}

impl fmt::Display for Orbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.letter() {
            Some(c) => write!(f, "{}{}", self.n, c),
            None => write!(f, "{}[l={}]", self.n, self.l),
        }
    }
}

/// `(n + l, n)`; lexicographic comparison of keys is the Madelung order.
pub fn madelung_key(o: Orbital) -> (u32, u32) {
    (o.n + o.l, o.n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FillingRule {
    FockN,
    HydrogenicNL,
    Madelung,
}

impl FillingRule {
    pub const ALL: [FillingRule; 3] = [
        FillingRule::FockN,
        FillingRule::HydrogenicNL,
        FillingRule::Madelung,
    ];

    /// Sort key realizing the rule's strict total order.
    pub fn key(self, o: Orbital) -> (u32, u32) {
        match self {
            // Fock's rule says nothing about l; increasing l is the tie-break.
            FillingRule::FockN | FillingRule::HydrogenicNL => (o.n, o.l),
            FillingRule::Madelung => madelung_key(o),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FillingRule::FockN => "fock-n",
            FillingRule::HydrogenicNL => "hydrogenic-nl",
            FillingRule::Madelung => "madelung",
        }
    }
}

impl fmt::Display for FillingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FillingRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fock-n" | "fockn" | "fock" | "n" => Ok(FillingRule::FockN),
            "hydrogenic-nl" | "hydrogenicnl" | "hydrogenic" | "nl" => {
                Ok(FillingRule::HydrogenicNL)
            }
            "madelung" | "n+l" => Ok(FillingRule::Madelung),
            other => Err(Error::domain(format!("unknown filling rule '{other}'"))),
        }
    }
}

/// All orbitals whose rule key lies below a cutoff `m`, chosen so the set is
/// a complete prefix of the rule's order.
fn orbitals_up_to(rule: FillingRule, m: u32) -> Vec<Orbital> {
    let mut out = Vec::new();
    for n in 1..=m {
        for l in 0..n {
            let keep = match rule {
                FillingRule::FockN | FillingRule::HydrogenicNL => true,
                FillingRule::Madelung => n + l <= m,
            };
            if keep {
                out.push(Orbital { n, l });
            }
        }
    }
    out.sort_by_key(|&o| rule.key(o));
    out
}

/// The first `count` orbitals in the rule's order.
pub fn filling_order(rule: FillingRule, count: usize) -> Vec<Orbital> {
    let mut m = 1;
    loop {
        let orbitals = orbitals_up_to(rule, m);
        if orbitals.len() >= count {
            return orbitals.into_iter().take(count).collect();
        }
        m += 1;
    }
}

/// Ground-state configuration predicted by greedy filling under `rule`.
pub fn fill(rule: FillingRule, z: u32) -> Result<Configuration> {
    if !(1..=MAX_Z).contains(&z) {
        return Err(Error::domain(format!(
            "atomic number {z} outside 1..={MAX_Z}"
        )));
    }
    let mut remaining = z;
    let mut occupations = BTreeMap::new();
    // every orbital holds at least two electrons, so z/2 + 1 orbitals suffice
    for o in filling_order(rule, z as usize / 2 + 1) {
        if remaining == 0 {
            break;
        }
        let placed = remaining.min(o.capacity());
        occupations.insert(o, placed);
        remaining -= placed;
    }
    Ok(Configuration { z, occupations })
}

/// Total capacity of the orbitals with `n + l == N` for `N = 1..=max_n`.
pub fn period_lengths(rule: FillingRule, max_n: u32) -> Result<Vec<u32>> {
    if rule != FillingRule::Madelung {
        return Err(Error::domain(format!(
            "period lengths are defined for the Madelung rule, not {rule}"
        )));
    }
    if max_n == 0 {
        return Err(Error::domain("max_N must be >= 1"));
    }
    Ok((1..=max_n)
        .map(|big_n| {
            (0..big_n)
                .filter(|&l| big_n - l > l)
                .map(|l| 2 * (2 * l + 1))
                .sum()
        })
        .collect())
}

/// Occupations of an atom with `z` electrons. Zero occupations are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    z: u32,
    occupations: BTreeMap<Orbital, u32>,
}

impl Configuration {
    /// Builds a configuration, dropping zero counts. Fails on duplicate
    /// orbitals, counts above capacity or an empty result.
    pub fn from_occupations<I>(occupations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Orbital, u32)>,
    {
        let mut map = BTreeMap::new();
        for (o, count) in occupations {
            if count > o.capacity() {
                return Err(Error::domain(format!(
                    "{o}{count} exceeds capacity {}",
                    o.capacity()
                )));
            }
            if map.contains_key(&o) {
                return Err(Error::domain(format!("orbital {o} listed twice")));
            }
            if count > 0 {
                map.insert(o, count);
            }
        }
        let z = map.values().sum();
        if z == 0 {
            return Err(Error::domain("configuration has no electrons"));
        }
        Ok(Configuration {
            z,
            occupations: map,
        })
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn occupation(&self, o: Orbital) -> u32 {
        self.occupations.get(&o).copied().unwrap_or(0)
    }

    /// Occupied orbitals in `(n, l)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Orbital, u32)> + '_ {
        self.occupations.iter().map(|(&o, &c)| (o, c))
    }

    pub fn len(&self) -> usize {
        self.occupations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupations.is_empty()
    }

    /// True if every orbital of `core` carries the same count here.
    pub fn contains_core(&self, core: &Configuration) -> bool {
        core.iter().all(|(o, c)| self.occupation(o) == c)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (o, c) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{o}{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_configuration(s)
    }
}

fn noble_core_text(symbol: &str) -> Option<&'static str> {
    NOBLE_CORES
        .iter()
        .find(|(s, _)| *s == symbol)
        .map(|&(_, text)| text)
}

/// Configuration of a noble-gas core by symbol (`He`, `Ne`, ..., `Og`).
pub fn noble_core(symbol: &str) -> Option<Configuration> {
    noble_core_text(symbol).map(|text| {
        parse_configuration(text).expect("built-in noble-gas cores are well formed")
    })
}

/// Largest noble-gas core contained in `c` that leaves at least one
/// electron outside the brackets.
pub fn largest_noble_core(c: &Configuration) -> Option<&'static str> {
    NOBLE_CORES.iter().rev().find_map(|&(symbol, _)| {
        let core = noble_core(symbol)?;
        (core.z() < c.z() && c.contains_core(&core)).then_some(symbol)
    })
}

/// Parses `[Kr] 4d5 5s1` or `1s2 2s2 2p3`. Bracketed cores are expanded
/// recursively; error positions are byte offsets into `text`.
pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut occupations: BTreeMap<Orbital, u32> = BTreeMap::new();
    let mut seen_token = false;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    while pos < bytes.len() {
        let start = pos;
        match bytes[pos] {
            b'[' => {
                if seen_token {
                    return Err(Error::parse(start, "core must be the first token"));
                }
                let close = text[start..]
                    .find(']')
                    .map(|i| start + i)
                    .ok_or_else(|| Error::parse(start, "unterminated core bracket"))?;
                let symbol = &text[start + 1..close];
                let core_text = noble_core_text(symbol).ok_or_else(|| {
                    Error::parse(start + 1, format!("unknown core symbol '{symbol}'"))
                })?;
                let core = parse_configuration(core_text)?;
                occupations.extend(core.iter());
                pos = close + 1;
            }
            b'0'..=b'9' => {
                let (n, after_n) = read_number(text, pos)?;
                pos = after_n;
                let letter = *bytes
                    .get(pos)
                    .ok_or_else(|| Error::parse(pos, "expected orbital letter"))?;
                let l = SPECTROSCOPIC
                    .iter()
                    .position(|&b| b == letter)
                    .ok_or_else(|| {
                        Error::parse(pos, format!("unknown orbital letter '{}'", letter as char))
                    })? as u32;
                pos += 1;
                if !bytes.get(pos).is_some_and(u8::is_ascii_digit) {
                    return Err(Error::parse(pos, "expected occupation count"));
                }
                let (count, after_count) = read_number(text, pos)?;
                pos = after_count;
                if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                    return Err(Error::parse(pos, "expected whitespace after orbital"));
                }
                let orbital = Orbital::new(n, l).map_err(|e| match e {
                    Error::Domain(msg) => Error::parse(start, msg),
                    other => other,
                })?;
                if count > orbital.capacity() {
                    return Err(Error::parse(
                        start,
                        format!(
                            "{orbital}{count} exceeds capacity {}",
                            orbital.capacity()
                        ),
                    ));
                }
                if occupations.contains_key(&orbital) {
                    return Err(Error::parse(start, format!("orbital {orbital} listed twice")));
                }
                if count > 0 {
                    occupations.insert(orbital, count);
                }
            }
            other => {
                let shown = text[start..].chars().next().unwrap_or(other as char);
                return Err(Error::parse(start, format!("unexpected character '{shown}'")));
            }
        }
        seen_token = true;
        skip_ws(&mut pos);
    }

    if !seen_token {
        return Err(Error::parse(0, "empty configuration"));
    }
    let z = occupations.values().sum();
    if z == 0 {
        return Err(Error::parse(0, "configuration has no electrons"));
    }
    Ok(Configuration { z, occupations })
}

fn read_number(text: &str, start: usize) -> Result<(u32, usize)> {
    let end = text[start..]
        .find(|c: char| !c.is_ascii_digit())
        .map_or(text.len(), |i| start + i);
    let value = text[start..end]
        .parse()
        .map_err(|_| Error::parse(start, "number out of range"))?;
    Ok((value, end))
}

/// Canonical ASCII form, orbitals in `(n, l)` order, optionally abbreviated
/// with a noble-gas core.
pub fn format_configuration(c: &Configuration, core: Option<&str>) -> Result<String> {
    let Some(symbol) = core else {
        return Ok(c.to_string());
    };
    let core_conf = noble_core(symbol)
        .ok_or_else(|| Error::domain(format!("unknown core symbol '{symbol}'")))?;
    if !c.contains_core(&core_conf) {
        return Err(Error::domain(format!(
            "core [{symbol}] is not contained in {c}"
        )));
    }
    let mut out = format!("[{symbol}]");
    for (o, count) in c.iter() {
        if core_conf.occupation(o) == 0 {
            out.push_str(&format!(" {o}{count}"));
        }
    }
    Ok(out)
}

/// Formats with the largest applicable noble-gas core, if any.
pub fn format_abbreviated(c: &Configuration) -> String {
    match largest_noble_core(c) {
        Some(symbol) => format_configuration(c, Some(symbol)).expect("core checked above"),
        None => c.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementRecord {
    pub z: u32,
    pub symbol: String,
    pub experimental: Configuration,
}

/// Experimental ground-state configurations keyed by atomic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementDataset {
    records: BTreeMap<u32, ElementRecord>,
}

impl ElementDataset {
    /// The dataset shipped with the crate (Z = 1..108).
    pub fn bundled() -> Self {
        Self::from_csv_str(BUNDLED_DATASET).expect("bundled element dataset is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref()).map_err(|e| {
            Error::Io(format!("cannot open {}: {e}", path.as_ref().display()))
        })?;
        Self::from_reader(file)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    /// Reads `z,symbol,configuration` rows. Any invalid row is reported with
    /// its line number.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Dataset {
                line: 1,
                message: e.to_string(),
            })?
            .clone();
        if headers.iter().collect::<Vec<_>>() != ["z", "symbol", "configuration"] {
            return Err(Error::Dataset {
                line: 1,
                message: format!(
                    "expected header 'z,symbol,configuration', found '{}'",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }

        let mut records = BTreeMap::new();
        let mut symbols = BTreeMap::new();
        for row in rdr.records() {
            let row = row.map_err(|e| Error::Dataset {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = row.position().map_or(0, |p| p.line() as usize);
            let bad = |message: String| Error::Dataset { line, message };

            let z: u32 = row[0]
                .parse()
                .map_err(|_| bad(format!("invalid atomic number '{}'", &row[0])))?;
            let symbol = row[1].to_string();
            let experimental = parse_configuration(&row[2])
                .map_err(|e| bad(format!("z={z} ({symbol}): {e}")))?;
            if experimental.z() != z {
                return Err(bad(format!(
                    "z={z} ({symbol}): configuration holds {} electrons",
                    experimental.z()
                )));
            }
            if let Some(previous) = symbols.insert(symbol.clone(), z) {
                return Err(bad(format!(
                    "symbol {symbol} already used for z={previous}"
                )));
            }
            if records.contains_key(&z) {
                return Err(bad(format!("duplicate atomic number {z}")));
            }
            records.insert(
                z,
                ElementRecord {
                    z,
                    symbol,
                    experimental,
                },
            );
        }
        Ok(ElementDataset { records })
    }

    pub fn get(&self, z: u32) -> Option<&ElementRecord> {
        self.records.get(&z)
    }

    /// Records in increasing `z`.
    pub fn records(&self) -> impl Iterator<Item = &ElementRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Regular,
    Exceptional,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Regular => "regular",
            Status::Exceptional => "exceptional",
        })
    }
}

/// One orbital whose predicted and experimental occupations differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccupationDiff {
    pub orbital: Orbital,
    pub predicted: u32,
    pub experimental: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub status: Status,
    /// Differences sorted by Madelung key.
    pub diff: Vec<OccupationDiff>,
}

/// Orbital-by-orbital comparison of two configurations.
pub fn compare(predicted: &Configuration, experimental: &Configuration) -> Classification {
    let mut orbitals: Vec<Orbital> = predicted
        .iter()
        .chain(experimental.iter())
        .map(|(o, _)| o)
        .collect();
    orbitals.sort_by_key(|&o| madelung_key(o));
    orbitals.dedup();
    let diff: Vec<_> = orbitals
        .into_iter()
        .filter_map(|o| {
            let (p, e) = (predicted.occupation(o), experimental.occupation(o));
            (p != e).then_some(OccupationDiff {
                orbital: o,
                predicted: p,
                experimental: e,
            })
        })
        .collect();
    let status = if diff.is_empty() {
        Status::Regular
    } else {
        Status::Exceptional
    };
    Classification { status, diff }
}

/// Compares the Madelung prediction for `z` with the dataset entry.
pub fn classify(z: u32, dataset: &ElementDataset) -> Result<Classification> {
    let record = dataset
        .get(z)
        .ok_or_else(|| Error::Lookup(format!("no dataset record for z={z}")))?;
    let predicted = fill(FillingRule::Madelung, z)?;
    Ok(compare(&predicted, &record.experimental))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orb(n: u32, l: u32) -> Orbital {
        Orbital::new(n, l).unwrap()
    }

    fn names(orbitals: &[Orbital]) -> Vec<String> {
        orbitals.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn madelung_key_examples() {
        assert_eq!(madelung_key(orb(4, 0)), (4, 4));
        assert_eq!(madelung_key(orb(3, 2)), (5, 3));
        assert!(madelung_key(orb(4, 0)) < madelung_key(orb(3, 2)));
        assert_eq!(madelung_key(orb(1, 0)), (1, 1));
    }

    #[test]
    fn orbital_validation() {
        assert!(Orbital::new(0, 0).is_err());
        assert!(Orbital::new(2, 2).is_err());
        assert_eq!(orb(4, 3).capacity(), 14);
        assert_eq!(orb(4, 3).to_string(), "4f");
    }

    #[test]
    fn filling_order_examples() {
        assert_eq!(
            names(&filling_order(FillingRule::Madelung, 12)),
            ["1s", "2s", "2p", "3s", "3p", "4s", "3d", "4p", "5s", "4d", "5p", "6s"]
        );
        assert_eq!(
            names(&filling_order(FillingRule::Madelung, 4)),
            ["1s", "2s", "2p", "3s"]
        );
        assert_eq!(
            names(&filling_order(FillingRule::FockN, 3)),
            ["1s", "2s", "2p"]
        );
        let hydrogenic = names(&filling_order(FillingRule::HydrogenicNL, 7));
        assert_eq!(hydrogenic, ["1s", "2s", "2p", "3s", "3p", "3d", "4s"]);
    }

    #[test]
    fn madelung_prefix_is_complete_for_large_counts() {
        let order = filling_order(FillingRule::Madelung, 30);
        let mut keys: Vec<_> = order.iter().map(|&o| madelung_key(o)).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort();
            k
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), 30);
        // every orbital with a smaller key than the last one must be present
        let last = *keys.last().unwrap();
        for n in 1..=20 {
            for l in 0..n {
                if madelung_key(orb(n, l)) <= last {
                    assert!(order.contains(&orb(n, l)), "{n},{l} missing");
                }
            }
        }
    }

    #[test]
    fn fill_examples() {
        assert_eq!(fill(FillingRule::Madelung, 7).unwrap().to_string(), "1s2 2s2 2p3");
        let mo = fill(FillingRule::Madelung, 42).unwrap();
        assert_eq!(format_configuration(&mo, Some("Kr")).unwrap(), "[Kr] 4d4 5s2");
        assert_eq!(fill(FillingRule::Madelung, 1).unwrap().to_string(), "1s1");
        assert!(fill(FillingRule::Madelung, 0).is_err());
        assert!(fill(FillingRule::Madelung, 119).is_err());
    }

    #[test]
    fn hydrogenic_rule_breaks_down_after_argon() {
        let k = fill(FillingRule::HydrogenicNL, 19).unwrap();
        assert_eq!(k.occupation(orb(3, 2)), 1);
        assert_eq!(k.occupation(orb(4, 0)), 0);
    }

    #[test]
    fn period_lengths_examples() {
        assert_eq!(
            period_lengths(FillingRule::Madelung, 8).unwrap(),
            [2, 2, 8, 8, 18, 18, 32, 32]
        );
        assert_eq!(period_lengths(FillingRule::Madelung, 1).unwrap(), [2]);
        assert_eq!(period_lengths(FillingRule::Madelung, 5).unwrap()[4], 2 + 6 + 10);
        assert!(matches!(
            period_lengths(FillingRule::FockN, 8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn parse_examples() {
        let mo = parse_configuration("[Kr] 4d5 5s1").unwrap();
        assert_eq!(mo.z(), 42);
        assert_eq!(mo.occupation(orb(3, 2)), 10);
        assert_eq!(mo.occupation(orb(4, 2)), 5);
        assert_eq!(mo.occupation(orb(5, 0)), 1);
        assert_eq!(parse_configuration("1s1").unwrap().z(), 1);
        // core glued to the first orbital, as often printed
        assert_eq!(parse_configuration("[Xe]6s2").unwrap().z(), 56);
        // explicit zero occupations are accepted and dropped
        let th = parse_configuration("[Rn] 5f0 6d2 7s2").unwrap();
        assert_eq!(th.z(), 90);
        assert_eq!(th.occupation(orb(5, 3)), 0);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases: &[(&str, usize)] = &[
            ("", 0),
            ("1s2 2x2", 5),
            ("[Fe] 4s2", 1),
            ("1s3", 0),
            ("1s2 2p", 6),
            ("1s2 1s1", 4),
            ("1s2 [He]", 4),
            ("2d1", 0),
            ("1s2 2s2x", 7),
            ("[Kr 5s1", 0),
            ("1s2 ,", 4),
            ("[Ne] 2p1", 5),
        ];
        for &(text, expected) in cases {
            match parse_configuration(text) {
                Err(Error::Parse { position, .. }) => {
                    assert_eq!(position, expected, "position for {text:?}")
                }
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn format_examples() {
        let n = fill(FillingRule::Madelung, 7).unwrap();
        assert_eq!(format_configuration(&n, None).unwrap(), "1s2 2s2 2p3");
        assert_eq!(format_configuration(&n, Some("He")).unwrap(), "[He] 2s2 2p3");
        let h = parse_configuration("1s1").unwrap();
        assert_eq!(format_configuration(&h, None).unwrap(), "1s1");
        let mo = parse_configuration("[Kr] 4d5 5s1").unwrap();
        assert_eq!(format_configuration(&mo, Some("Kr")).unwrap(), "[Kr] 4d5 5s1");
        assert!(matches!(
            format_configuration(&h, Some("He")),
            Err(Error::Domain(_))
        ));
        assert!(format_configuration(&mo, Some("Fe")).is_err());
        assert_eq!(format_abbreviated(&mo), "[Kr] 4d5 5s1");
        assert_eq!(format_abbreviated(&parse_configuration("1s2").unwrap()), "1s2");
    }

    #[test]
    fn bundled_dataset_is_complete() {
        let data = ElementDataset::bundled();
        assert_eq!(data.len(), 108);
        for (z, record) in (1..=108).zip(data.records()) {
            assert_eq!(record.z, z);
            assert_eq!(record.symbol, element_symbol(z).unwrap());
            assert_eq!(record.experimental.z(), z);
        }
    }

    #[test]
    fn classify_examples() {
        let data = ElementDataset::bundled();
        let cr = classify(24, &data).unwrap();
        assert_eq!(cr.status, Status::Exceptional);
        assert_eq!(
            cr.diff,
            [
                OccupationDiff { orbital: orb(4, 0), predicted: 2, experimental: 1 },
                OccupationDiff { orbital: orb(3, 2), predicted: 4, experimental: 5 },
            ]
        );
        let n = classify(7, &data).unwrap();
        assert_eq!(n.status, Status::Regular);
        assert!(n.diff.is_empty());
        let cu = classify(29, &data).unwrap();
        assert_eq!(cu.status, Status::Exceptional);
        assert_eq!(
            format_configuration(&data.get(29).unwrap().experimental, Some("Ar")).unwrap(),
            "[Ar] 3d10 4s1"
        );
        assert!(matches!(classify(109, &data), Err(Error::Lookup(_))));
    }

    #[test]
    fn dataset_rejects_bad_rows() {
        let over = "z,symbol,configuration\n1,H,1s1\n2,He,1s3\n";
        match ElementDataset::from_csv_str(over) {
            Err(Error::Dataset { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("capacity"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let miscounted = "z,symbol,configuration\n2,He,1s1\n";
        assert!(matches!(
            ElementDataset::from_csv_str(miscounted),
            Err(Error::Dataset { line: 2, .. })
        ));
        let dup = "z,symbol,configuration\n1,H,1s1\n2,H,1s2\n";
        assert!(ElementDataset::from_csv_str(dup).is_err());
        let header = "Z,sym,conf\n1,H,1s1\n";
        assert!(matches!(
            ElementDataset::from_csv_str(header),
            Err(Error::Dataset { line: 1, .. })
        ));
    }
}
