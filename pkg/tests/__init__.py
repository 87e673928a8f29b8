"""Tests package for EasyDamas."""
