//! On-disk instance format.
//!
//! Version-1 JSON object with exactly the fields below; unknown fields
//! are rejected so typos fail loudly instead of silently changing the
//! instance.

use serde::{Deserialize, Serialize};

use psmc::{Instance, Ratio};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub n: usize,
    /// Covering ratio as an exact `[numerator, denominator]` pair.
    pub q: [u64; 2],
    pub sets: Vec<Vec<usize>>,
    pub costs: Vec<u64>,
    pub reqs: Vec<u32>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> InstanceFile {
        InstanceFile {
            version: 1,
            n: inst.num_elements(),
            q: [inst.covering_ratio().num(), inst.covering_ratio().den()],
            sets: (0..inst.num_sets()).map(|s| inst.set_elements(s).to_vec()).collect(),
            costs: inst.costs().to_vec(),
            reqs: (0..inst.num_elements()).map(|e| inst.requirement(e)).collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, String> {
        if self.version != 1 {
            return Err(format!("unsupported instance file version {}", self.version));
        }
        if self.q[1] == 0 {
            return Err("covering ratio denominator is zero".into());
        }
        Instance::new(
            self.n,
            self.sets.clone(),
            self.costs.clone(),
            self.reqs.clone(),
            Ratio::new(self.q[0], self.q[1]),
        )
        .map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instance serializes");
        text.push('\n');
        text
    }

    pub fn parse(text: &str) -> Result<InstanceFile, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use psmc::generators::gen_appendix;

    #[test]
    fn round_trips_losslessly() {
        let inst = gen_appendix();
        let file = InstanceFile::from_instance(&inst);
        let text = file.to_json();
        let back = InstanceFile::parse(&text).unwrap().to_instance().unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_versions() {
        let err = InstanceFile::parse(r#"{"version":1,"n":1,"q":[1,1],"sets":[[0]],"costs":[1],"reqs":[1],"extra":2}"#);
        assert!(err.is_err());
        let file = InstanceFile::parse(r#"{"version":2,"n":1,"q":[1,1],"sets":[[0]],"costs":[1],"reqs":[1]}"#)
            .unwrap();
        assert!(file.to_instance().is_err());
    }
}
