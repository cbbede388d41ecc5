"""Tests for Little Big Data.""" 