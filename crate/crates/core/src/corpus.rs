//! JSON-lines corpora of rotation systems.
//!
//! One object per line: `{"n": 5, "rows": [[2,3,4,5], ...]}` with 1-based
//! labels. Catalog files add a `"name"` field. Rows are normalized on read.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::system::{RotationSystem, SystemError};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line}: {source}")]
    System { line: usize, source: SystemError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
    n: usize,
    rows: Vec<Vec<usize>>,
}

/// A named entry of a catalog file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub name: Option<String>,
    pub system: RotationSystem,
}

pub fn to_json_line(rs: &RotationSystem, name: Option<&str>) -> String {
    let rec = Record { name: name.map(str::to_owned), n: rs.n(), rows: rs.to_labels() };
    serde_json::to_string(&rec).expect("records always serialize")
}

pub fn parse_line(line: &str, lineno: usize) -> Result<Named, CorpusError> {
    let rec: Record = serde_json::from_str(line).map_err(|source| CorpusError::Json { line: lineno, source })?;
    let system = RotationSystem::from_labels(rec.n, &rec.rows).map_err(|source| CorpusError::System { line: lineno, source })?;
    Ok(Named { name: rec.name, system })
}

/// Reads every non-blank line of a corpus.
pub fn read_named<R: BufRead>(reader: R) -> Result<Vec<Named>, CorpusError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(&line, i + 1)?);
    }
    Ok(out)
}

pub fn read<R: BufRead>(reader: R) -> Result<Vec<RotationSystem>, CorpusError> {
    Ok(read_named(reader)?.into_iter().map(|r| r.system).collect())
}

pub fn write<'a, W: Write, I: IntoIterator<Item = &'a RotationSystem>>(mut writer: W, systems: I) -> io::Result<()> {
    for rs in systems {
        writeln!(writer, "{}", to_json_line(rs, None))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let rs = RotationSystem::from_labels(4, &[vec![2, 4, 3], vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 3]]).unwrap();
        let mut buf = Vec::new();
        write(&mut buf, [&rs, &rs.reflect()]).unwrap();
        let back = read(&buf[..]).unwrap();
        assert_eq!(back, vec![rs.clone(), rs.reflect()]);
        assert_eq!(String::from_utf8(buf).unwrap().lines().next().unwrap(), r#"{"n":4,"rows":[[2,4,3],[1,3,4],[1,4,2],[1,2,3]]}"#);
    }

    #[test]
    fn reader_normalizes_and_keeps_names() {
        let text = "{\"name\":\"x\",\"n\":3,\"rows\":[[3,2],[3,1],[2,1]]}\n\n";
        let recs = read_named(text.as_bytes()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].name.as_deref(), Some("x"));
        assert_eq!(recs[0].system.to_labels(), vec![vec![2, 3], vec![1, 3], vec![1, 2]]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "{\"n\":3,\"rows\":[[2,3],[1,3],[1,2]]}\n{\"n\":3,\"rows\":[[2,2],[1,3],[1,2]]}\n";
        match read(text.as_bytes()) {
            Err(CorpusError::System { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(read("nope".as_bytes()), Err(CorpusError::Json { line: 1, .. })));
    }
}
