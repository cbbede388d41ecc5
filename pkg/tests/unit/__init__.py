"""Unit tests for Little Big Data.""" 