//! Sign and face dictionaries plus gloss resolution.
//!
//! Signs are stored as joint-angle sequences keyed by uppercase gloss.
//! Lookup resolves a query in three stages: exact key, rule-normalized key,
//! then a word-embedding fallback that substitutes the dictionary entry with
//! the highest cosine similarity to the query.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::skeleton::JointAngleSequence;

/// Where the signs in a dictionary were harvested from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DictionarySource {
    Isolated,
    Continuous,
}

/// Gloss -> joint-angle store.
#[derive(Debug, Clone)]
pub struct SignDictionary {
    pub entries: BTreeMap<String, JointAngleSequence>,
    pub source: DictionarySource,
    pub skeleton_version: String,
}

impl SignDictionary {
    pub fn validate(&self, joint_count: usize) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::Argument("sign dictionary is empty".into()));
        }
        for (gloss, seq) in &self.entries {
            validate_entry(gloss, seq, joint_count)?;
        }
        Ok(())
    }
}

/// Checks a single dictionary record against the type invariants.
pub fn validate_entry(gloss: &str, seq: &JointAngleSequence, joint_count: usize) -> Result<()> {
    if gloss.is_empty() {
        return Err(Error::InvalidGloss {
            gloss: gloss.to_string(),
            msg: "empty key".into(),
        });
    }
    if gloss != gloss.to_uppercase() || gloss.trim() != gloss {
        return Err(Error::InvalidGloss {
            gloss: gloss.to_string(),
            msg: "keys must be trimmed and uppercase".into(),
        });
    }
    if seq.len() < 2 {
        return Err(Error::Argument(format!(
            "entry {gloss:?} has {} frame(s), need at least 2",
            seq.len()
        )));
    }
    seq.validate(joint_count)
        .map_err(|e| Error::Argument(format!("entry {gloss:?}: {e}")))
}

/// Anchor point indices inside each face entry, used to fit the face onto
/// the body.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FaceAnchors {
    pub head_root: usize,
    pub left: usize,
    pub right: usize,
}

/// Token id -> face pose sequence store. All entries share one frame count
/// and point count.
#[derive(Debug, Clone)]
pub struct FaceDictionary {
    pub entries: Vec<Vec<Vec<Point3>>>,
    pub frame_count: usize,
    pub point_count: usize,
    pub anchors: FaceAnchors,
}

impl FaceDictionary {
    pub fn token_count(&self) -> usize {
        self.entries.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::Argument("face dictionary is empty".into()));
        }
        if self.frame_count < 2 {
            return Err(Error::Argument(format!(
                "face entries need at least 2 frames, got {}",
                self.frame_count
            )));
        }
        for (token, entry) in self.entries.iter().enumerate() {
            if entry.len() != self.frame_count {
                return Err(Error::Dimension(format!(
                    "face token {token} has {} frames, header says {}",
                    entry.len(),
                    self.frame_count
                )));
            }
            for (u, frame) in entry.iter().enumerate() {
                if frame.len() != self.point_count {
                    return Err(Error::Dimension(format!(
                        "face token {token} frame {u} has {} points, header says {}",
                        frame.len(),
                        self.point_count
                    )));
                }
                if !frame.iter().all(|p| crate::geom::is_finite(*p)) {
                    return Err(Error::Data(format!(
                        "face token {token} frame {u} has non-finite coordinates"
                    )));
                }
            }
        }
        for (label, idx) in [
            ("head_root", self.anchors.head_root),
            ("left", self.anchors.left),
            ("right", self.anchors.right),
        ] {
            if idx >= self.point_count {
                return Err(Error::Argument(format!(
                    "face anchor {label} = {idx} outside point count {}",
                    self.point_count
                )));
            }
        }
        Ok(())
    }
}

/// Returns the face sequence for a token id, unmodified.
pub fn lookup_face(dict: &FaceDictionary, token: usize) -> Result<&Vec<Vec<Point3>>> {
    dict.entries.get(token).ok_or(Error::FaceToken {
        token,
        count: dict.token_count(),
    })
}

/// Token -> vector map with a fixed dimension.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    vectors: HashMap<String, Vec<f64>>,
    dim: usize,
}

impl EmbeddingTable {
    pub fn new(vectors: HashMap<String, Vec<f64>>, dim: usize) -> Result<Self> {
        for (token, v) in &vectors {
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "embedding for {token:?} has dimension {}, table says {dim}",
                    v.len()
                )));
            }
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                return Err(Error::Data(format!(
                    "embedding for {token:?} has invalid norm {norm}"
                )));
            }
        }
        Ok(EmbeddingTable { vectors, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&Vec<f64>> {
        self.vectors.get(token)
    }

    /// Embeds a gloss. Multi-word glosses (whitespace-separated) embed as
    /// the mean of their in-vocabulary word vectors; `None` when no word is
    /// in vocabulary.
    pub fn embed(&self, gloss: &str) -> Option<Vec<f64>> {
        let words: Vec<&str> = gloss.split_whitespace().collect();
        if words.len() == 1 {
            return self.get(words[0]).cloned();
        }
        let mut acc = vec![0.0; self.dim];
        let mut hits = 0usize;
        for w in words {
            if let Some(v) = self.get(w) {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x;
                }
                hits += 1;
            }
        }
        if hits == 0 {
            return None;
        }
        for a in acc.iter_mut() {
            *a /= hits as f64;
        }
        Some(acc)
    }
}

fn cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na <= f64::EPSILON || nb <= f64::EPSILON {
        return None;
    }
    Some(dot / (na * nb))
}

/// Strips surrounding whitespace, uppercases, and removes trailing variant
/// suffixes of the form digits-plus-optional-letter (`HAUS1A` -> `HAUS`).
/// Suffixes are stripped repeatedly so the result is a fixed point.
pub fn normalize_gloss(raw: &str) -> Result<String> {
    if raw.is_empty() {
        return Err(Error::InvalidGloss {
            gloss: raw.to_string(),
            msg: "empty gloss".into(),
        });
    }
    let mut s: String = raw.trim().to_uppercase();
    loop {
        let stripped = strip_variant_suffix(&s);
        if stripped == s {
            break;
        }
        s = stripped;
    }
    if s.is_empty() {
        return Err(Error::InvalidGloss {
            gloss: raw.to_string(),
            msg: "nothing left after removing variant suffix".into(),
        });
    }
    Ok(s)
}

fn strip_variant_suffix(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut end = bytes.len();
    // Optional single trailing ASCII letter...
    let with_letter = end > 0 && bytes[end - 1].is_ascii_alphabetic();
    if with_letter {
        end -= 1;
    }
    // ...must be preceded by at least one digit.
    let digits_end = end;
    while end > 0 && bytes[end - 1].is_ascii_digit() {
        end -= 1;
    }
    if end == digits_end {
        // No digit run; the trailing letter (if any) was not a variant tag.
        return s.to_string();
    }
    s[..end].to_string()
}

/// How a gloss was resolved against the dictionary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    /// The query matched a key verbatim.
    Exact,
    /// The rule-normalized query matched a key.
    Normalized { key: String },
    /// Nearest dictionary key by embedding cosine similarity.
    Substituted { key: String, similarity: f64 },
}

/// Knobs for [`lookup`].
#[derive(Debug, Clone, Default)]
pub struct LookupParams {
    /// Substitutions below this cosine similarity are rejected. Default 0.
    pub similarity_floor: f64,
    /// Raw-gloss exceptions applied before rule-based normalization
    /// (uppercased raw form -> replacement key).
    pub exceptions: BTreeMap<String, String>,
}

/// Resolves a gloss: exact key, then normalized key, then embedding
/// substitution per the cosine argmax over dictionary keys (lexicographically
/// smallest key wins ties).
pub fn lookup<'d>(
    dict: &'d SignDictionary,
    embeddings: &EmbeddingTable,
    gloss: &str,
    params: &LookupParams,
) -> Result<(&'d JointAngleSequence, Resolution)> {
    if dict.entries.is_empty() {
        return Err(Error::Argument("sign dictionary is empty".into()));
    }
    if let Some(seq) = dict.entries.get(gloss) {
        return Ok((seq, Resolution::Exact));
    }
    let upper = gloss.trim().to_uppercase();
    let normalized = match params.exceptions.get(&upper) {
        Some(replacement) => replacement.clone(),
        None => normalize_gloss(gloss)?,
    };
    if let Some(seq) = dict.entries.get(&normalized) {
        return Ok((
            seq,
            Resolution::Normalized {
                key: normalized.clone(),
            },
        ));
    }
    // Embedding fallback. Try the normalized form first, then the raw
    // uppercased query.
    let query = embeddings
        .embed(&normalized)
        .or_else(|| embeddings.embed(&upper))
        .ok_or_else(|| Error::UnresolvableGloss {
            gloss: gloss.to_string(),
            reason: "not in dictionary and missing from the embedding table".into(),
        })?;
    let mut best: Option<(&String, f64)> = None;
    for key in dict.entries.keys() {
        let Some(key_vec) = embeddings.embed(key) else {
            continue;
        };
        let Some(sim) = cosine(&query, &key_vec) else {
            continue;
        };
        // Strictly-greater keeps the lexicographically smallest key on ties
        // because BTreeMap iterates in sorted order.
        if best.map_or(true, |(_, s)| sim > s) {
            best = Some((key, sim));
        }
    }
    match best {
        Some((key, sim)) if sim >= params.similarity_floor => {
            let seq = &dict.entries[key];
            Ok((
                seq,
                Resolution::Substituted {
                    key: key.clone(),
                    similarity: sim,
                },
            ))
        }
        Some((key, sim)) => Err(Error::UnresolvableGloss {
            gloss: gloss.to_string(),
            reason: format!(
                "best substitute {key:?} has similarity {sim:.4}, below floor {}",
                params.similarity_floor
            ),
        }),
        None => Err(Error::UnresolvableGloss {
            gloss: gloss.to_string(),
            reason: "no dictionary key has an embedding".into(),
        }),
    }
}

// --- file formats ---------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct SignDictHeader {
    skeleton_version: String,
    source: DictionarySource,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SignRecord {
    pub gloss: String,
    pub fps: f64,
    /// One row per frame, 3 * joint_count radians.
    pub frames: Vec<Vec<f64>>,
}

impl SignRecord {
    pub fn to_sequence(&self) -> Result<JointAngleSequence> {
        let mut frames = Vec::with_capacity(self.frames.len());
        for (u, row) in self.frames.iter().enumerate() {
            if row.len() % 3 != 0 {
                return Err(Error::Dimension(format!(
                    "record {:?} frame {u} has width {}, not a multiple of 3",
                    self.gloss,
                    row.len()
                )));
            }
            frames.push(row.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect());
        }
        Ok(JointAngleSequence {
            frames,
            fps: self.fps,
        })
    }

    pub fn from_sequence(gloss: &str, seq: &JointAngleSequence) -> Self {
        SignRecord {
            gloss: gloss.to_string(),
            fps: seq.fps,
            frames: seq
                .frames
                .iter()
                .map(|f| f.iter().flat_map(|a| a.iter().copied()).collect())
                .collect(),
        }
    }
}

/// Loads a sign dictionary file: one JSON record per line, first line is the
/// header carrying skeleton version and source label.
pub fn load_sign_dictionary(path: &Path, joint_count: usize) -> Result<SignDictionary> {
    let display = path.display().to_string();
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let header: SignDictHeader = match lines.next() {
        Some((_, line)) => serde_json::from_str(&line?).map_err(|e| Error::Parse {
            path: display.clone(),
            line: 1,
            msg: format!("bad header: {e}"),
        })?,
        None => {
            return Err(Error::Parse {
                path: display,
                line: 1,
                msg: "empty dictionary file".into(),
            })
        }
    };
    let mut entries = BTreeMap::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SignRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: display.clone(),
            line: idx + 1,
            msg: e.to_string(),
        })?;
        let seq = record.to_sequence()?;
        validate_entry(&record.gloss, &seq, joint_count)?;
        if entries.insert(record.gloss.clone(), seq).is_some() {
            return Err(Error::Parse {
                path: display.clone(),
                line: idx + 1,
                msg: format!("duplicate gloss key {:?}", record.gloss),
            });
        }
    }
    let dict = SignDictionary {
        entries,
        source: header.source,
        skeleton_version: header.skeleton_version,
    };
    dict.validate(joint_count)?;
    Ok(dict)
}

pub fn save_sign_dictionary(dict: &SignDictionary, path: &Path) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    let header = SignDictHeader {
        skeleton_version: dict.skeleton_version.clone(),
        source: dict.source,
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("header"))?;
    for (gloss, seq) in &dict.entries {
        let record = SignRecord::from_sequence(gloss, seq);
        writeln!(out, "{}", serde_json::to_string(&record).expect("record"))?;
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct FaceDictHeader {
    frame_count: usize,
    point_count: usize,
    anchors: FaceAnchors,
}

#[derive(Debug, Serialize, Deserialize)]
struct FaceRecord {
    token: usize,
    /// One row per frame, 3 * point_count coordinates.
    frames: Vec<Vec<f64>>,
}

/// Loads a face dictionary: header line, then one record per token id.
/// Token ids must be dense 0..N in file order.
pub fn load_face_dictionary(path: &Path) -> Result<FaceDictionary> {
    let display = path.display().to_string();
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let header: FaceDictHeader = match lines.next() {
        Some((_, line)) => serde_json::from_str(&line?).map_err(|e| Error::Parse {
            path: display.clone(),
            line: 1,
            msg: format!("bad header: {e}"),
        })?,
        None => {
            return Err(Error::Parse {
                path: display,
                line: 1,
                msg: "empty face dictionary file".into(),
            })
        }
    };
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: FaceRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: display.clone(),
            line: idx + 1,
            msg: e.to_string(),
        })?;
        if record.token != entries.len() {
            return Err(Error::Parse {
                path: display.clone(),
                line: idx + 1,
                msg: format!(
                    "token ids must be dense and in order; expected {}, got {}",
                    entries.len(),
                    record.token
                ),
            });
        }
        let mut frames = Vec::with_capacity(record.frames.len());
        for (u, row) in record.frames.iter().enumerate() {
            if row.len() != 3 * header.point_count {
                return Err(Error::Parse {
                    path: display.clone(),
                    line: idx + 1,
                    msg: format!(
                        "token {} frame {u} has width {}, expected {}",
                        record.token,
                        row.len(),
                        3 * header.point_count
                    ),
                });
            }
            frames.push(
                row.chunks_exact(3)
                    .map(|c| [c[0], c[1], c[2]])
                    .collect::<Vec<Point3>>(),
            );
        }
        entries.push(frames);
    }
    let dict = FaceDictionary {
        entries,
        frame_count: header.frame_count,
        point_count: header.point_count,
        anchors: header.anchors,
    };
    dict.validate()?;
    Ok(dict)
}

pub fn save_face_dictionary(dict: &FaceDictionary, path: &Path) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    let header = FaceDictHeader {
        frame_count: dict.frame_count,
        point_count: dict.point_count,
        anchors: dict.anchors,
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("header"))?;
    for (token, entry) in dict.entries.iter().enumerate() {
        let record = FaceRecord {
            token,
            frames: entry
                .iter()
                .map(|f| f.iter().flat_map(|p| p.iter().copied()).collect())
                .collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&record).expect("record"))?;
    }
    Ok(())
}

/// Loads a plain-text embedding table: first line `count dim`, then one
/// token and `dim` decimal floats per line.
pub fn load_embeddings(path: &Path) -> Result<EmbeddingTable> {
    let display = path.display().to_string();
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let (count, dim) = match lines.next() {
        Some((_, line)) => {
            let line = line?;
            let mut it = line.split_whitespace();
            let count: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse {
                    path: display.clone(),
                    line: 1,
                    msg: "header must be \"count dim\"".into(),
                })?;
            let dim: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse {
                    path: display.clone(),
                    line: 1,
                    msg: "header must be \"count dim\"".into(),
                })?;
            (count, dim)
        }
        None => {
            return Err(Error::Parse {
                path: display,
                line: 1,
                msg: "empty embedding file".into(),
            })
        }
    };
    let mut vectors = HashMap::with_capacity(count);
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let token = it.next().unwrap().to_string();
        let values: std::result::Result<Vec<f64>, _> = it.map(|t| t.parse::<f64>()).collect();
        let values = values.map_err(|e| Error::Parse {
            path: display.clone(),
            line: idx + 1,
            msg: format!("bad float: {e}"),
        })?;
        if values.len() != dim {
            return Err(Error::Parse {
                path: display.clone(),
                line: idx + 1,
                msg: format!("{} values for token {token:?}, expected {dim}", values.len()),
            });
        }
        if vectors.insert(token.clone(), values).is_some() {
            return Err(Error::Parse {
                path: display.clone(),
                line: idx + 1,
                msg: format!("duplicate token {token:?}"),
            });
        }
    }
    if vectors.len() != count {
        return Err(Error::Parse {
            path: display,
            line: 1,
            msg: format!("header promised {count} vectors, file has {}", vectors.len()),
        });
    }
    EmbeddingTable::new(vectors, dim)
}
