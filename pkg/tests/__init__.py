"""Test suite for betagap"""
