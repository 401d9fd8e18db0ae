//! Request-sequence taxonomy: classification, generation, and enumeration.
//!
//! Every request sequence at least as long as its list falls into exactly
//! one leaf of this tree ("covering" means every list element is requested
//! at least once; `n` is the sequence length, `l` the list length):
//!
//! ```text
//! n = l                                   GROUP1
//!   covering (a permutation)                A
//!     the list order itself                   TYPE_I
//!     the reversed list order                 TYPE_II
//!     any other permutation                   TYPE_III
//!   not covering                            B
//!     one element, repeated n times           TYPE_IV[p=<its list position>]
//!     two or more distinct elements           TYPE_V
//! n > l, l divides n (m = n/l)            GROUP2
//!   covering, every frequency equal (= m)   C_a_i
//!     the list order repeated m times         TYPE_VI[m=...]
//!     the reversed order repeated m times     TYPE_VII[m=...]
//!     (anything else stays untagged C_a_i)
//!   covering, frequencies unequal           C_a_ii
//!   not covering                            C_b
//! n > l, l does not divide n              GROUP2/D
//! ```
//!
//! Sequences shorter than the list are rejected as unclassifiable.
//!
//! A [`SequenceClass`] doubles as a classification result and as a pattern
//! for [`generate`] and [`enumerate_class`]. In a pattern, an omitted type
//! tag on class A or B means "any subtype"; on `C_a_i` it names the
//! untagged remainder leaf. Omitted `p`/`m` parameters are wildcards.
//!
//! One deliberate asymmetry: TYPE_IV is defined by its construction rule
//! (one fixed element repeated), and generation/enumeration accept it for
//! any length `n >= 1`. Only sequences with `n = l` classify back as
//! TYPE_IV; longer ones land in `C_b` or `D` like any other sequence.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::list::{self, ElementId, ListState, RequestSequence};

/// Sequences exactly as long as the list (GROUP1) or longer (GROUP2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Group1,
    Group2,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Group1 => write!(f, "GROUP1"),
            Group::Group2 => write!(f, "GROUP2"),
        }
    }
}

/// The six classes under the two groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    A,
    B,
    CaI,
    CaII,
    Cb,
    D,
}

impl Class {
    pub fn group(self) -> Group {
        match self {
            Class::A | Class::B => Group::Group1,
            Class::CaI | Class::CaII | Class::Cb | Class::D => Group::Group2,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::A => write!(f, "A"),
            Class::B => write!(f, "B"),
            Class::CaI => write!(f, "C_a_i"),
            Class::CaII => write!(f, "C_a_ii"),
            Class::Cb => write!(f, "C_b"),
            Class::D => write!(f, "D"),
        }
    }
}

/// Named sequence shapes within classes A, B, and C_a_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl TypeTag {
    fn owner(self) -> Class {
        match self {
            TypeTag::I | TypeTag::II | TypeTag::III => Class::A,
            TypeTag::IV | TypeTag::V => Class::B,
            TypeTag::VI | TypeTag::VII => Class::CaI,
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::I => write!(f, "TYPE_I"),
            TypeTag::II => write!(f, "TYPE_II"),
            TypeTag::III => write!(f, "TYPE_III"),
            TypeTag::IV => write!(f, "TYPE_IV"),
            TypeTag::V => write!(f, "TYPE_V"),
            TypeTag::VI => write!(f, "TYPE_VI"),
            TypeTag::VII => write!(f, "TYPE_VII"),
        }
    }
}

/// A point in the taxonomy: either the result of classifying a concrete
/// sequence, or a pattern describing which sequences to generate or
/// enumerate.
///
/// The textual form is `GROUP/CLASS[/TYPE[\[param\]]]`, for example
/// `GROUP1/A/TYPE_I`, `GROUP1/B/TYPE_IV[p=2]`, `GROUP2/C_a_i/TYPE_VI[m=2]`,
/// or `GROUP2/D`. [`FromStr`] accepts exactly what [`fmt::Display`] prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceClass {
    group: Group,
    class: Class,
    type_tag: Option<TypeTag>,
    repeated_position: Option<usize>,
    multiplier: Option<u64>,
}

impl SequenceClass {
    /// Assembles a class, enforcing that the tag belongs to the class and
    /// that parameters only appear where they mean something: `p` (the
    /// 1-indexed list position of the repeated element) on TYPE_IV, `m`
    /// (the repetition multiplier, at least 2) on TYPE_VI and TYPE_VII.
    pub fn from_parts(
        class: Class,
        type_tag: Option<TypeTag>,
        repeated_position: Option<usize>,
        multiplier: Option<u64>,
    ) -> Result<Self, Error> {
        if let Some(tag) = type_tag {
            if tag.owner() != class {
                return Err(Error::InconsistentSpec(format!(
                    "{tag} does not belong to class {class}"
                )));
            }
        }
        if repeated_position.is_some() && type_tag != Some(TypeTag::IV) {
            return Err(Error::InconsistentSpec(
                "a repeated position only applies to TYPE_IV".into(),
            ));
        }
        if repeated_position == Some(0) {
            return Err(Error::InconsistentSpec(
                "repeated positions are 1-indexed; p=0 is not a position".into(),
            ));
        }
        if multiplier.is_some() && !matches!(type_tag, Some(TypeTag::VI | TypeTag::VII)) {
            return Err(Error::InconsistentSpec(
                "a multiplier only applies to TYPE_VI and TYPE_VII".into(),
            ));
        }
        if let Some(m) = multiplier {
            if m < 2 {
                return Err(Error::InconsistentSpec(format!(
                    "multiplier m={m} is below 2, so the sequence would not be longer than the list"
                )));
            }
        }
        Ok(SequenceClass {
            group: class.group(),
            class,
            type_tag,
            repeated_position,
            multiplier,
        })
    }

    pub fn type_i() -> Self {
        SequenceClass::from_parts(Class::A, Some(TypeTag::I), None, None).unwrap()
    }

    pub fn type_ii() -> Self {
        SequenceClass::from_parts(Class::A, Some(TypeTag::II), None, None).unwrap()
    }

    pub fn type_iii() -> Self {
        SequenceClass::from_parts(Class::A, Some(TypeTag::III), None, None).unwrap()
    }

    /// TYPE_IV, optionally pinned to the element at list position `p`.
    pub fn type_iv(p: Option<usize>) -> Result<Self, Error> {
        SequenceClass::from_parts(Class::B, Some(TypeTag::IV), p, None)
    }

    pub fn type_v() -> Self {
        SequenceClass::from_parts(Class::B, Some(TypeTag::V), None, None).unwrap()
    }

    /// TYPE_VI, optionally pinned to multiplier `m`.
    pub fn type_vi(m: Option<u64>) -> Result<Self, Error> {
        SequenceClass::from_parts(Class::CaI, Some(TypeTag::VI), None, m)
    }

    /// TYPE_VII, optionally pinned to multiplier `m`.
    pub fn type_vii(m: Option<u64>) -> Result<Self, Error> {
        SequenceClass::from_parts(Class::CaI, Some(TypeTag::VII), None, m)
    }

    /// Any permutation of the list (TYPE_I, TYPE_II, or TYPE_III).
    pub fn class_a() -> Self {
        SequenceClass::from_parts(Class::A, None, None, None).unwrap()
    }

    /// Any non-covering sequence of length `l` (TYPE_IV or TYPE_V).
    pub fn class_b() -> Self {
        SequenceClass::from_parts(Class::B, None, None, None).unwrap()
    }

    /// The untagged remainder of C_a_i: equal frequencies, but neither the
    /// list order nor its reversal repeated.
    pub fn c_a_i() -> Self {
        SequenceClass::from_parts(Class::CaI, None, None, None).unwrap()
    }

    pub fn c_a_ii() -> Self {
        SequenceClass::from_parts(Class::CaII, None, None, None).unwrap()
    }

    pub fn c_b() -> Self {
        SequenceClass::from_parts(Class::Cb, None, None, None).unwrap()
    }

    pub fn class_d() -> Self {
        SequenceClass::from_parts(Class::D, None, None, None).unwrap()
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn class(&self) -> Class {
        self.class
    }

    pub fn type_tag(&self) -> Option<TypeTag> {
        self.type_tag
    }

    pub fn repeated_position(&self) -> Option<usize> {
        self.repeated_position
    }

    pub fn multiplier(&self) -> Option<u64> {
        self.multiplier
    }

    /// Whether this pattern accepts `observed`, a concrete classification
    /// as produced by [`classify`].
    pub fn admits(&self, observed: &SequenceClass) -> bool {
        if self.class != observed.class {
            return false;
        }
        let tag_ok = match self.type_tag {
            Some(tag) => observed.type_tag == Some(tag),
            None => match self.class {
                // A and B are fully partitioned into named types, so a bare
                // class is a wildcard; a bare C_a_i is its own leaf.
                Class::A | Class::B => true,
                Class::CaI => observed.type_tag.is_none(),
                Class::CaII | Class::Cb | Class::D => true,
            },
        };
        if !tag_ok {
            return false;
        }
        if let Some(p) = self.repeated_position {
            if observed.repeated_position != Some(p) {
                return false;
            }
        }
        if let Some(m) = self.multiplier {
            if observed.multiplier != Some(m) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.group, self.class)?;
        if let Some(tag) = self.type_tag {
            write!(f, "/{tag}")?;
            if let Some(p) = self.repeated_position {
                write!(f, "[p={p}]")?;
            }
            if let Some(m) = self.multiplier {
                write!(f, "[m={m}]")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SequenceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let invalid = || Error::InvalidLabel(s.into());
        let mut parts = s.split('/');
        let group_token = parts.next().ok_or_else(invalid)?;
        let class_token = parts.next().ok_or_else(invalid)?;
        let tag_token = parts.next();
        if parts.next().is_some() {
            return Err(invalid());
        }
        let group = match group_token {
            "GROUP1" => Group::Group1,
            "GROUP2" => Group::Group2,
            _ => return Err(invalid()),
        };
        let class = match class_token {
            "A" => Class::A,
            "B" => Class::B,
            "C_a_i" => Class::CaI,
            "C_a_ii" => Class::CaII,
            "C_b" => Class::Cb,
            "D" => Class::D,
            _ => return Err(invalid()),
        };
        if class.group() != group {
            return Err(Error::InvalidLabel(format!(
                "{s}: class {class} belongs to {}",
                class.group()
            )));
        }
        let (type_tag, repeated_position, multiplier) = match tag_token {
            None => (None, None, None),
            Some(token) => parse_tag_token(token).ok_or_else(invalid)?,
        };
        SequenceClass::from_parts(class, type_tag, repeated_position, multiplier)
    }
}

fn parse_tag_token(token: &str) -> Option<(Option<TypeTag>, Option<usize>, Option<u64>)> {
    let (name, param) = match token.find('[') {
        None => (token, None),
        Some(i) => {
            let (name, rest) = token.split_at(i);
            let inner = rest.strip_prefix('[')?.strip_suffix(']')?;
            let (key, value) = inner.split_once('=')?;
            (name, Some((key, value)))
        }
    };
    let tag = match name {
        "TYPE_I" => TypeTag::I,
        "TYPE_II" => TypeTag::II,
        "TYPE_III" => TypeTag::III,
        "TYPE_IV" => TypeTag::IV,
        "TYPE_V" => TypeTag::V,
        "TYPE_VI" => TypeTag::VI,
        "TYPE_VII" => TypeTag::VII,
        _ => return None,
    };
    match (tag, param) {
        (_, None) => Some((Some(tag), None, None)),
        (TypeTag::IV, Some(("p", value))) => {
            let p: usize = value.parse().ok()?;
            Some((Some(tag), Some(p), None))
        }
        (TypeTag::VI | TypeTag::VII, Some(("m", value))) => {
            let m: u64 = value.parse().ok()?;
            Some((Some(tag), None, Some(m)))
        }
        _ => None,
    }
}

/// How many sequences may be materialized by [`enumerate_class`] at once.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

const MAX_SAMPLING_ATTEMPTS: u32 = 10_000;

/// Errors from classification, generation, and enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    List(list::Error),
    /// The sequence is shorter than the list, which no class covers.
    SequenceShorterThanList { n: usize, l: usize },
    /// The requested pattern cannot produce any sequence for this list
    /// length and sequence length. The message says which requirement
    /// failed.
    InconsistentSpec(String),
    /// The class holds more sequences than [`ENUMERATION_LIMIT`].
    ClassTooLarge { count: u128, limit: u64 },
    /// Rejection sampling gave up; the pattern's sequences are too rare in
    /// the proposal distribution.
    SamplingExhausted { attempts: u32 },
    /// A class label did not match the `GROUP/CLASS[/TYPE[\[param\]]]`
    /// grammar.
    InvalidLabel(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::List(e) => write!(f, "{e}"),
            Error::SequenceShorterThanList { n, l } => write!(
                f,
                "sequence of length {n} is shorter than the list ({l} elements) and cannot be classified"
            ),
            Error::InconsistentSpec(msg) => write!(f, "inconsistent class spec: {msg}"),
            Error::ClassTooLarge { count, limit } => {
                write!(f, "class holds {count} sequences, above the enumeration limit of {limit}")
            }
            Error::SamplingExhausted { attempts } => {
                write!(f, "no sequence matching the pattern found in {attempts} sampling attempts")
            }
            Error::InvalidLabel(s) => write!(f, "invalid class label: {s}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<list::Error> for Error {
    fn from(e: list::Error) -> Self {
        Error::List(e)
    }
}

/// Classifies `sequence` against `list` into exactly one leaf of the
/// taxonomy. Fails if the sequence names elements outside the list or is
/// shorter than the list.
pub fn classify(list: &ListState, sequence: &RequestSequence) -> Result<SequenceClass, Error> {
    classify_ids(list, sequence.requests())
}

fn classify_ids(list: &ListState, requests: &[ElementId]) -> Result<SequenceClass, Error> {
    for (i, &request) in requests.iter().enumerate() {
        if !list.contains(request) {
            return Err(Error::List(list::Error::ElementNotInList {
                element: request,
                request_index: Some(i),
            }));
        }
    }
    let l = list.len();
    let n = requests.len();
    if n < l {
        return Err(Error::SequenceShorterThanList { n, l });
    }

    let mut frequencies: BTreeMap<ElementId, u64> = BTreeMap::new();
    for &request in requests {
        *frequencies.entry(request).or_insert(0) += 1;
    }
    let covering = frequencies.len() == l;

    if n == l {
        if covering {
            let tag = if requests == list.elements() {
                TypeTag::I
            } else if requests == list.reversed().elements() {
                TypeTag::II
            } else {
                TypeTag::III
            };
            return SequenceClass::from_parts(Class::A, Some(tag), None, None);
        }
        if frequencies.len() == 1 {
            let p = list.position_of(requests[0])?;
            return SequenceClass::from_parts(Class::B, Some(TypeTag::IV), Some(p), None);
        }
        return SequenceClass::from_parts(Class::B, Some(TypeTag::V), None, None);
    }

    if !n.is_multiple_of(l) {
        return SequenceClass::from_parts(Class::D, None, None, None);
    }
    let m = (n / l) as u64;
    if !covering {
        return SequenceClass::from_parts(Class::Cb, None, None, None);
    }
    if frequencies.values().any(|&count| count != m) {
        return SequenceClass::from_parts(Class::CaII, None, None, None);
    }
    if is_repetition_of(requests, list.elements(), m) {
        return SequenceClass::from_parts(Class::CaI, Some(TypeTag::VI), None, Some(m));
    }
    if is_repetition_of(requests, list.reversed().elements(), m) {
        return SequenceClass::from_parts(Class::CaI, Some(TypeTag::VII), None, Some(m));
    }
    SequenceClass::from_parts(Class::CaI, None, None, None)
}

fn is_repetition_of(requests: &[ElementId], base: &[ElementId], m: u64) -> bool {
    debug_assert_eq!(requests.len(), base.len() * m as usize);
    requests.chunks(base.len()).all(|chunk| chunk == base)
}

/// Checks that the pattern can produce sequences of length `n` on a list
/// of length `l`, before any sampling or enumeration work.
fn check_feasible(l: usize, pattern: &SequenceClass, n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::List(list::Error::EmptySequence));
    }
    match pattern.class {
        Class::A => {
            if n != l {
                return Err(Error::InconsistentSpec(format!(
                    "class A sequences are permutations, so n must equal l (got n={n}, l={l})"
                )));
            }
            match pattern.type_tag {
                Some(TypeTag::II) if l < 2 => Err(Error::InconsistentSpec(
                    "TYPE_II needs l >= 2; the only permutation of one element is TYPE_I".into(),
                )),
                Some(TypeTag::III) if l < 3 => Err(Error::InconsistentSpec(format!(
                    "TYPE_III needs l >= 3; every permutation of {l} elements is TYPE_I or TYPE_II"
                ))),
                _ => Ok(()),
            }
        }
        Class::B => match pattern.type_tag {
            Some(TypeTag::IV) => {
                if let Some(p) = pattern.repeated_position {
                    if p > l {
                        return Err(Error::InconsistentSpec(format!(
                            "repeated position p={p} exceeds the list length l={l}"
                        )));
                    }
                }
                Ok(())
            }
            Some(TypeTag::V) => {
                if n != l {
                    Err(Error::InconsistentSpec(format!(
                        "TYPE_V requires n = l (got n={n}, l={l})"
                    )))
                } else if l < 3 {
                    Err(Error::InconsistentSpec(format!(
                        "TYPE_V needs l >= 3: with l={l} a non-covering sequence of length l cannot hold two distinct elements with a repeat"
                    )))
                } else {
                    Ok(())
                }
            }
            _ => {
                if n != l {
                    Err(Error::InconsistentSpec(format!(
                        "class B requires n = l (got n={n}, l={l})"
                    )))
                } else if l < 2 {
                    Err(Error::InconsistentSpec(
                        "class B is empty for l=1: the only sequence of length 1 covers the list"
                            .into(),
                    ))
                } else {
                    Ok(())
                }
            }
        },
        Class::CaI | Class::CaII | Class::Cb => {
            if n <= l || !n.is_multiple_of(l) {
                return Err(Error::InconsistentSpec(format!(
                    "class {} requires n to be a multiple of l with n >= 2l (got n={n}, l={l})",
                    pattern.class
                )));
            }
            let m = (n / l) as u64;
            if let Some(wanted) = pattern.multiplier {
                if wanted != m {
                    return Err(Error::InconsistentSpec(format!(
                        "multiplier m={wanted} requires n = {wanted}*l, but n={n} gives m={m}"
                    )));
                }
            }
            match (pattern.class, pattern.type_tag) {
                (Class::CaI, Some(TypeTag::VI)) => Ok(()),
                (Class::CaI, Some(TypeTag::VII)) if l < 2 => Err(Error::InconsistentSpec(
                    "TYPE_VII needs l >= 2; reversing one element gives TYPE_VI".into(),
                )),
                (Class::CaI, Some(TypeTag::VII)) => Ok(()),
                (Class::CaI, None) if l < 2 => Err(Error::InconsistentSpec(
                    "untagged C_a_i is empty for l=1: every equal-frequency sequence is TYPE_VI"
                        .into(),
                )),
                (Class::CaII, None) if l < 2 => Err(Error::InconsistentSpec(
                    "C_a_ii is empty for l=1: a single element cannot have unequal frequencies"
                        .into(),
                )),
                (Class::Cb, None) if l < 2 => Err(Error::InconsistentSpec(
                    "C_b is empty for l=1: every sequence over one element covers the list".into(),
                )),
                _ => Ok(()),
            }
        }
        Class::D => {
            if n <= l {
                Err(Error::InconsistentSpec(format!(
                    "class D requires n > l (got n={n}, l={l})"
                )))
            } else if n.is_multiple_of(l) {
                Err(Error::InconsistentSpec(format!(
                    "class D requires l not to divide n (got n={n}, l={l})"
                )))
            } else {
                Ok(())
            }
        }
    }
}

/// Draws one sequence of length `n` matching `pattern`, using `rng` for
/// every random choice. Deterministic shapes (TYPE_I, TYPE_II, TYPE_IV
/// with `p` fixed, TYPE_VI, TYPE_VII) ignore the generator entirely;
/// stochastic shapes are sampled by rejection against [`classify`] with at
/// most [`MAX_SAMPLING_ATTEMPTS`] proposals.
pub fn generate<R: Rng + ?Sized>(
    list: &ListState,
    pattern: &SequenceClass,
    n: usize,
    rng: &mut R,
) -> Result<RequestSequence, Error> {
    check_feasible(list.len(), pattern, n)?;
    let l = list.len();
    let order: Vec<ElementId> = list.elements().to_vec();
    let reversed: Vec<ElementId> = list.reversed().elements().to_vec();

    let requests: Vec<ElementId> = match (pattern.class, pattern.type_tag) {
        (Class::A, Some(TypeTag::I)) => order,
        (Class::A, Some(TypeTag::II)) => reversed,
        (Class::A, None) => {
            let mut perm = order;
            perm.shuffle(rng);
            perm
        }
        (Class::A, Some(TypeTag::III)) => sample_filtered(list, pattern, rng, |rng| {
            let mut perm = order.clone();
            perm.shuffle(rng);
            perm
        })?,
        (Class::B, Some(TypeTag::IV)) => {
            let p = match pattern.repeated_position {
                Some(p) => p,
                None => rng.random_range(1..=l),
            };
            vec![list.element_at(p)?; n]
        }
        (Class::B, _) => sample_filtered(list, pattern, rng, |rng| {
            (0..n).map(|_| order[rng.random_range(0..l)]).collect()
        })?,
        (Class::CaI, Some(TypeTag::VI)) => repeat_block(&order, n / l),
        (Class::CaI, Some(TypeTag::VII)) => repeat_block(&reversed, n / l),
        (Class::CaI, None) => {
            let multiset = repeat_block(&order, n / l);
            sample_filtered(list, pattern, rng, |rng| {
                let mut draw = multiset.clone();
                draw.shuffle(rng);
                draw
            })?
        }
        (Class::CaII, None) => sample_filtered(list, pattern, rng, |rng| {
            // One copy of each element guarantees coverage; the rest are
            // free draws. Only the rare all-frequencies-equal outcome is
            // rejected.
            let mut draw = order.clone();
            draw.extend((0..n - l).map(|_| order[rng.random_range(0..l)]));
            draw.shuffle(rng);
            draw
        })?,
        (Class::Cb, None) => {
            let d = rng.random_range(1..l);
            let mut pool = order;
            pool.shuffle(rng);
            pool.truncate(d);
            let mut draw = pool.clone();
            draw.extend((0..n - d).map(|_| pool[rng.random_range(0..d)]));
            draw.shuffle(rng);
            draw
        }
        (Class::D, None) => (0..n).map(|_| order[rng.random_range(0..l)]).collect(),
        // from_parts never pairs a class with a foreign tag.
        (class, Some(tag)) => {
            return Err(Error::InconsistentSpec(format!(
                "{tag} does not belong to class {class}"
            )))
        }
    };
    Ok(RequestSequence::new(&requests)?)
}

/// [`generate`] with a fresh ChaCha8 stream seeded from `seed`. Equal
/// seeds give equal sequences on every platform.
pub fn generate_seeded(
    list: &ListState,
    pattern: &SequenceClass,
    n: usize,
    seed: u64,
) -> Result<RequestSequence, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate(list, pattern, n, &mut rng)
}

fn repeat_block(base: &[ElementId], m: usize) -> Vec<ElementId> {
    let mut out = Vec::with_capacity(base.len() * m);
    for _ in 0..m {
        out.extend_from_slice(base);
    }
    out
}

fn sample_filtered<R, F>(
    list: &ListState,
    pattern: &SequenceClass,
    rng: &mut R,
    mut propose: F,
) -> Result<Vec<ElementId>, Error>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Vec<ElementId>,
{
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let candidate = propose(rng);
        let observed = classify_ids(list, &candidate)?;
        if pattern.admits(&observed) {
            return Ok(candidate);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: MAX_SAMPLING_ATTEMPTS,
    })
}

/// Exact size of the class described by `pattern` at length `n`, without
/// enumerating it. Saturates at `u128::MAX` (far beyond any enumerable
/// class).
pub fn class_count(l: usize, pattern: &SequenceClass, n: usize) -> Result<u128, Error> {
    check_feasible(l, pattern, n)?;
    let lu = l as u64;
    let nu = n as u64;
    let count = match (pattern.class, pattern.type_tag) {
        (Class::A, None) => factorial(lu),
        (Class::A, Some(TypeTag::I)) | (Class::A, Some(TypeTag::II)) => 1,
        (Class::A, Some(TypeTag::III)) => factorial(lu).saturating_sub(2),
        (Class::B, Some(TypeTag::IV)) => match pattern.repeated_position {
            Some(_) => 1,
            None => lu as u128,
        },
        (Class::B, Some(TypeTag::V)) => power(lu, lu)
            .saturating_sub(factorial(lu))
            .saturating_sub(lu as u128),
        (Class::B, _) => power(lu, lu).saturating_sub(factorial(lu)),
        (Class::CaI, Some(TypeTag::VI)) | (Class::CaI, Some(TypeTag::VII)) => 1,
        (Class::CaI, None) => {
            equal_frequency_arrangements(nu, nu / lu, lu).saturating_sub(2)
        }
        (Class::CaII, None) => surjections(nu, lu)
            .saturating_sub(equal_frequency_arrangements(nu, nu / lu, lu)),
        (Class::Cb, None) => {
            let mut total: u128 = 0;
            for d in 1..lu {
                total = total
                    .saturating_add(binomial(lu, d).saturating_mul(surjections(nu, d)));
            }
            total
        }
        (Class::D, None) => power(lu, nu),
        (class, Some(tag)) => {
            return Err(Error::InconsistentSpec(format!(
                "{tag} does not belong to class {class}"
            )))
        }
    };
    Ok(count)
}

/// Materializes every sequence of length `n` in the class described by
/// `pattern`, in a fixed order (lexicographic by list position). Classes
/// larger than [`ENUMERATION_LIMIT`] are refused up front via
/// [`class_count`].
///
/// Except for TYPE_IV (defined by construction), every returned sequence
/// is run back through [`classify`] and admitted by `pattern` before being
/// included.
pub fn enumerate_class(
    list: &ListState,
    pattern: &SequenceClass,
    n: usize,
) -> Result<Vec<RequestSequence>, Error> {
    let count = class_count(list.len(), pattern, n)?;
    if count > ENUMERATION_LIMIT as u128 {
        return Err(Error::ClassTooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let l = list.len();
    let elements = list.elements().to_vec();
    let mut out: Vec<RequestSequence> = Vec::new();

    match (pattern.class, pattern.type_tag) {
        (Class::A, Some(TypeTag::I)) => {
            push_if_admitted(list, pattern, elements.clone(), &mut out)?;
        }
        (Class::A, Some(TypeTag::II)) => {
            push_if_admitted(list, pattern, list.reversed().elements().to_vec(), &mut out)?;
        }
        (Class::A, _) => {
            let mut indices: Vec<usize> = (0..l).collect();
            loop {
                let candidate: Vec<ElementId> = indices.iter().map(|&i| elements[i]).collect();
                push_if_admitted(list, pattern, candidate, &mut out)?;
                if !next_permutation(&mut indices) {
                    break;
                }
            }
        }
        (Class::B, Some(TypeTag::IV)) => {
            let positions: Vec<usize> = match pattern.repeated_position {
                Some(p) => vec![p],
                None => (1..=l).collect(),
            };
            for p in positions {
                let element = list.element_at(p)?;
                out.push(RequestSequence::new(&vec![element; n])?);
            }
        }
        (Class::B, _) | (Class::CaII, None) | (Class::D, None) => {
            for_each_index_sequence(l, n, |digits| {
                let candidate: Vec<ElementId> = digits.iter().map(|&i| elements[i]).collect();
                push_if_admitted(list, pattern, candidate, &mut out)
            })?;
        }
        (Class::CaI, Some(TypeTag::VI)) => {
            push_if_admitted(list, pattern, repeat_block(&elements, n / l), &mut out)?;
        }
        (Class::CaI, Some(TypeTag::VII)) => {
            let candidate = repeat_block(list.reversed().elements(), n / l);
            push_if_admitted(list, pattern, candidate, &mut out)?;
        }
        (Class::CaI, None) => {
            let m = n / l;
            let mut indices: Vec<usize> = (0..l).flat_map(|i| core::iter::repeat_n(i, m)).collect();
            loop {
                let candidate: Vec<ElementId> = indices.iter().map(|&i| elements[i]).collect();
                push_if_admitted(list, pattern, candidate, &mut out)?;
                if !next_permutation(&mut indices) {
                    break;
                }
            }
        }
        (Class::Cb, None) => {
            // Group by the exact set of elements used: every non-covering
            // sequence is surjective onto exactly one proper subset, so no
            // sequence is produced twice.
            for d in 1..l {
                for_each_combination(l, d, |subset| {
                    let pool: Vec<ElementId> = subset.iter().map(|&i| elements[i]).collect();
                    for_each_index_sequence(d, n, |digits| {
                        if !uses_all(digits, d) {
                            return Ok(());
                        }
                        let candidate: Vec<ElementId> =
                            digits.iter().map(|&i| pool[i]).collect();
                        push_if_admitted(list, pattern, candidate, &mut out)
                    })
                })?;
            }
        }
        (class, Some(tag)) => {
            return Err(Error::InconsistentSpec(format!(
                "{tag} does not belong to class {class}"
            )))
        }
    }
    Ok(out)
}

fn push_if_admitted(
    list: &ListState,
    pattern: &SequenceClass,
    candidate: Vec<ElementId>,
    out: &mut Vec<RequestSequence>,
) -> Result<(), Error> {
    let observed = classify_ids(list, &candidate)?;
    if pattern.admits(&observed) {
        out.push(RequestSequence::new(&candidate)?);
    }
    Ok(())
}

fn uses_all(digits: &[usize], arity: usize) -> bool {
    let mut seen = vec![false; arity];
    for &d in digits {
        seen[d] = true;
    }
    seen.iter().all(|&s| s)
}

/// Calls `f` with every length-`n` sequence over `0..arity`, in
/// lexicographic order.
fn for_each_index_sequence<F>(arity: usize, n: usize, mut f: F) -> Result<(), Error>
where
    F: FnMut(&[usize]) -> Result<(), Error>,
{
    let mut digits = vec![0usize; n];
    loop {
        f(&digits)?;
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < arity {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Calls `f` with every size-`d` subset of `0..l` as a sorted slice, in
/// lexicographic order.
fn for_each_combination<F>(l: usize, d: usize, mut f: F) -> Result<(), Error>
where
    F: FnMut(&[usize]) -> Result<(), Error>,
{
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        f(&combo)?;
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if combo[i] < l - d + i {
                combo[i] += 1;
                for j in i + 1..d {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Advances `v` to its next lexicographic permutation, returning false
/// once `v` is the last one. Works on multisets: each distinct arrangement
/// appears exactly once.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn factorial(l: u64) -> u128 {
    let mut out: u128 = 1;
    for i in 2..=l as u128 {
        out = out.saturating_mul(i);
    }
    out
}

fn power(base: u64, exp: u64) -> u128 {
    let mut out: u128 = 1;
    for _ in 0..exp {
        out = out.saturating_mul(base as u128);
    }
    out
}

fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut out: u128 = 1;
    for i in 0..b {
        out = out.saturating_mul((a - i) as u128) / (i + 1) as u128;
    }
    out
}

/// Number of length-`n` sequences over `d` elements that use every one of
/// them, by inclusion-exclusion. Saturates (the subtraction stays exact
/// whenever no term saturated).
fn surjections(n: u64, d: u64) -> u128 {
    let mut plus: u128 = 0;
    let mut minus: u128 = 0;
    for i in 0..=d {
        let term = binomial(d, i).saturating_mul(power(d - i, n));
        if i % 2 == 0 {
            plus = plus.saturating_add(term);
        } else {
            minus = minus.saturating_add(term);
        }
    }
    plus.saturating_sub(minus)
}

/// Number of length-`n` arrangements in which each of `l` elements appears
/// exactly `m` times: the multinomial n! / (m!)^l, computed as a product
/// of binomials.
fn equal_frequency_arrangements(n: u64, m: u64, l: u64) -> u128 {
    let mut out: u128 = 1;
    let mut remaining = n;
    for _ in 0..l {
        out = out.saturating_mul(binomial(remaining, m));
        remaining -= m;
    }
    out
}
