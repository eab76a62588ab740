//! The IAM letter drawings: class labels, distortion levels, dataset loading
//! and the bundled letter prototypes.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::GeometricGraph;
use crate::io::gxl::{read_class_file, read_gxl_letter};
use crate::io::json::read_json_graph;

/// One of the 15 uppercase letters of the database.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(char);

impl Letter {
    pub const ALL: [Letter; 15] = [
        Letter('A'),
        Letter('E'),
        Letter('F'),
        Letter('H'),
        Letter('I'),
        Letter('K'),
        Letter('L'),
        Letter('M'),
        Letter('N'),
        Letter('T'),
        Letter('V'),
        Letter('W'),
        Letter('X'),
        Letter('Y'),
        Letter('Z'),
    ];

    pub fn new(c: char) -> Result<Self> {
        let letter = Letter(c);
        if Self::ALL.contains(&letter) {
            Ok(letter)
        } else {
            Err(Error::Parse(format!("'{c}' is not one of the 15 letter classes")))
        }
    }

    pub fn as_char(self) -> char {
        self.0
    }

    /// Position in [`Letter::ALL`] (alphabetical).
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&l| l == self).expect("letters are always valid")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::new(c),
            _ => Err(Error::Parse(format!("\"{s}\" is not a letter class"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distortion {
    Low,
    Med,
    High,
}

impl Distortion {
    pub const ALL: [Distortion; 3] = [Distortion::Low, Distortion::Med, Distortion::High];

    /// Directory name used by the dataset.
    pub fn dir_name(self) -> &'static str {
        match self {
            Distortion::Low => "LOW",
            Distortion::Med => "MED",
            Distortion::High => "HIGH",
        }
    }
}

impl fmt::Display for Distortion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.dir_name())
    }
}

impl FromStr for Distortion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LOW" => Ok(Distortion::Low),
            "MED" | "MEDIUM" => Ok(Distortion::Med),
            "HIGH" => Ok(Distortion::High),
            _ => Err(Error::Parse(format!("unknown distortion level \"{s}\""))),
        }
    }
}

/// A labeled test drawing.
#[derive(Clone, Debug, PartialEq)]
pub struct LetterRecord {
    pub graph: GeometricGraph<f64>,
    pub label: Letter,
    pub distortion: Distortion,
    pub source_id: String,
}

/// Loads every graph listed in the `.cxl` class files of one distortion
/// directory (for example `Letter/LOW`). Records are sorted by source id.
pub fn load_letter_dir(dir: &Path, distortion: Distortion) -> Result<Vec<LetterRecord>> {
    let mut class_files: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("cxl")))
        .collect();
    class_files.sort();
    if class_files.is_empty() {
        return Err(Error::Parse(format!("no .cxl class files in {}", dir.display())));
    }
    let mut records = Vec::new();
    for cxl in class_files {
        for (file, class) in read_class_file(&fs::read(&cxl)?)? {
            let path = dir.join(&file);
            let graph = read_gxl_letter(&fs::read(&path)?)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            records.push(LetterRecord {
                graph,
                label: class.parse()?,
                distortion,
                source_id: file.trim_end_matches(".gxl").to_string(),
            });
        }
    }
    records.sort_by(|a, b| a.source_id.cmp(&b.source_id));
    records.dedup_by(|a, b| a.source_id == b.source_id);
    Ok(records)
}

/// Loads the three distortion levels under a dataset root containing
/// `LOW/`, `MED/` and `HIGH/`.
pub fn load_letter_dataset(root: &Path) -> Result<Vec<(Distortion, Vec<LetterRecord>)>> {
    Distortion::ALL
        .iter()
        .map(|&d| Ok((d, load_letter_dir(&root.join(d.dir_name()), d)?)))
        .collect()
}

const PROTOTYPE_FILES: [(char, &str); 15] = [
    ('A', include_str!("../../data/prototypes/A.json")),
    ('E', include_str!("../../data/prototypes/E.json")),
    ('F', include_str!("../../data/prototypes/F.json")),
    ('H', include_str!("../../data/prototypes/H.json")),
    ('I', include_str!("../../data/prototypes/I.json")),
    ('K', include_str!("../../data/prototypes/K.json")),
    ('L', include_str!("../../data/prototypes/L.json")),
    ('M', include_str!("../../data/prototypes/M.json")),
    ('N', include_str!("../../data/prototypes/N.json")),
    ('T', include_str!("../../data/prototypes/T.json")),
    ('V', include_str!("../../data/prototypes/V.json")),
    ('W', include_str!("../../data/prototypes/W.json")),
    ('X', include_str!("../../data/prototypes/X.json")),
    ('Y', include_str!("../../data/prototypes/Y.json")),
    ('Z', include_str!("../../data/prototypes/Z.json")),
];

/// The hand-digitized prototype drawing of every letter, in alphabetical order.
pub fn letter_prototypes() -> Vec<(Letter, GeometricGraph<f64>)> {
    PROTOTYPE_FILES
        .iter()
        .map(|&(c, text)| {
            let graph = read_json_graph(text.as_bytes()).expect("bundled prototypes are well-formed");
            (Letter(c), graph)
        })
        .collect()
}

/// Loads prototypes from `<dir>/<letter>.json`, one file per letter.
pub fn load_prototypes_dir(dir: &Path) -> Result<Vec<(Letter, GeometricGraph<f64>)>> {
    Letter::ALL
        .iter()
        .map(|&letter| {
            let path = dir.join(format!("{letter}.json"));
            if !path.exists() {
                return Err(Error::MissingPrototype(letter.as_char()));
            }
            Ok((letter, read_json_graph(&fs::read(&path)?)?))
        })
        .collect()
}
