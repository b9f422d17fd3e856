//! Integer-set files: newline-delimited decimal values, strictly ascending,
//! no duplicates. Readers validate the contract and name the offending line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::products::validate_set;

pub fn read_set(path: &Path) -> Result<Vec<u64>> {
    let file = File::open(path)?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let value: u64 = trimmed
            .parse()
            .map_err(|e| Error::InvalidSet(format!("{}:{}: {e}", path.display(), idx + 1)))?;
        out.push(value);
    }
    validate_set(&out).map_err(|e| match e {
        Error::InvalidSet(msg) => Error::InvalidSet(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok(out)
}

pub fn write_set(path: &Path, set: &[u64]) -> Result<()> {
    validate_set(set)?;
    let mut w = BufWriter::new(File::create(path)?);
    for x in set {
        writeln!(w, "{x}")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read_round_trips() {
        let dir = std::env::temp_dir().join(format!("setio-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("set.txt");
        let set: Vec<u64> = vec![1, 5, 7, 100, 4_294_967_295];
        write_set(&path, &set).unwrap();
        assert_eq!(read_set(&path).unwrap(), set);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn unsorted_input_is_rejected() {
        let dir = std::env::temp_dir().join(format!("setio-test-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.txt");
        std::fs::write(&path, "5\n3\n").unwrap();
        assert!(read_set(&path).is_err());
        std::fs::write(&path, "3\n3\n").unwrap();
        assert!(read_set(&path).is_err());
        std::fs::write(&path, "3\nx\n").unwrap();
        assert!(read_set(&path).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
