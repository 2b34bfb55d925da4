//! Small reference instances shared by tests, examples and the CLI.

/// Three railway tracks with their occupancy indicators and wheel sensors:
/// each indicator needs the sensors bounding its track section.
pub const RAILWAY_EXAMPLE: &str = "\
# three connected railway tracks
ucap 2
iucap 2
indicator I1
indicator I2
indicator I3
sensor S1
sensor S2
sensor S3
sensor S4
sensor S5
sensor S6
edge I1 S1
edge I1 S2
edge I1 S5
edge I1 S6
edge I2 S2
edge I2 S3
edge I2 S4
edge I2 S5
edge I3 S3
edge I3 S4
";

/// Parsed [`RAILWAY_EXAMPLE`].
pub fn railway_example() -> crate::Instance {
    crate::parse_instance(RAILWAY_EXAMPLE).expect("fixture parses")
}
