#![allow(dead_code)]

pub mod eigen;
pub mod oracle;
