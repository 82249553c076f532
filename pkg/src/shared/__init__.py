"""Configuration and JSON schemas shared by the physarum packages."""
