"""Test suite for the plumbtop package."""
